#include "fplgr/environment.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

#include "fplgr/error.hpp"

namespace fplgr {
namespace {

bool in_unit_interval(double x) { return std::isfinite(x) && x >= 0.0 && x <= 1.0; }

std::string_view trim(std::string_view s) {
    const auto ws = " \t\r";
    const auto b = s.find_first_not_of(ws);
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(ws);
    return s.substr(b, e - b + 1);
}

}  // namespace

LossVector::LossVector(std::vector<double> values) : values_(std::move(values)) {
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (!in_unit_interval(values_[i]))
            throw InvalidArgument("loss component " + std::to_string(i) + " outside [0,1]");
    }
}

SemiBanditFeedback SemiBanditFeedback::from_observations(
    std::size_t d, std::span<const std::pair<std::size_t, double>> observed) {
    SemiBanditFeedback fb;
    fb.observed_.assign(d, std::nullopt);
    for (const auto& [i, loss] : observed) {
        if (i >= d) throw DimensionMismatch("feedback index out of range");
        fb.observed_[i] = loss;
    }
    return fb;
}

double SemiBanditFeedback::loss(std::size_t i) const {
    if (!has(i))
        throw FeedbackAccessError("loss of component " + std::to_string(i) +
                                  " was not observed under semi-bandit feedback");
    return *observed_[i];
}

std::vector<std::size_t> SemiBanditFeedback::observed_indices() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < observed_.size(); ++i)
        if (observed_[i]) out.push_back(i);
    return out;
}

SemiBanditFeedback semi_bandit_feedback(const LossVector& loss, const Action& played) {
    if (loss.dimension() != played.dimension())
        throw DimensionMismatch("semi_bandit_feedback: dimension mismatch");
    SemiBanditFeedback fb;
    fb.observed_.assign(loss.dimension(), std::nullopt);
    for (std::size_t i = 0; i < loss.dimension(); ++i)
        if (played[i]) fb.observed_[i] = loss[i];
    return fb;
}

History::History(std::size_t d) : d_(d), prefix_(d, 0) {}

void History::append(const Action& action) {
    if (action.dimension() != d_) throw DimensionMismatch("History::append: dimension mismatch");
    const auto base = prefix_.size() - d_;
    prefix_.resize(prefix_.size() + d_);
    for (std::size_t i = 0; i < d_; ++i)
        prefix_[base + d_ + i] = prefix_[base + i] + (action[i] ? 1u : 0u);
    ++rounds_;
}

std::uint32_t History::count(std::size_t i, std::size_t from, std::size_t to) const {
    if (i >= d_ || from > to || to > rounds_) throw InvalidArgument("History::count: bad range");
    return prefix_[to * d_ + i] - prefix_[from * d_ + i];
}

Environment Environment::bernoulli(std::vector<double> means) {
    if (means.empty()) throw EnvironmentError("bernoulli: empty mean vector");
    for (double mu : means)
        if (!in_unit_interval(mu)) throw EnvironmentError("bernoulli: mean outside [0,1]");
    const auto d = means.size();
    return Environment(BernoulliLosses{std::move(means)}, d);
}

Environment Environment::uniform(std::vector<double> low, std::vector<double> high) {
    if (low.empty() || low.size() != high.size())
        throw EnvironmentError("uniform: low/high must be nonempty and equal length");
    for (std::size_t i = 0; i < low.size(); ++i) {
        if (!in_unit_interval(low[i]) || !in_unit_interval(high[i]) || low[i] > high[i])
            throw EnvironmentError("uniform: need 0 <= low <= high <= 1 per component");
    }
    const auto d = low.size();
    return Environment(UniformLosses{std::move(low), std::move(high)}, d);
}

Environment Environment::replay(std::size_t d, std::vector<std::vector<double>> rows) {
    if (d < 1) throw EnvironmentError("replay: d must be >= 1");
    if (rows.empty()) throw EnvironmentError("replay: no rounds");
    ReplayLosses r{d, rows.size(), {}};
    r.matrix.reserve(rows.size() * d);
    for (std::size_t t = 0; t < rows.size(); ++t) {
        if (rows[t].size() != d)
            throw EnvironmentError("replay: row " + std::to_string(t + 1) + " has " +
                                   std::to_string(rows[t].size()) + " columns, expected " +
                                   std::to_string(d));
        for (double x : rows[t]) {
            if (!in_unit_interval(x))
                throw EnvironmentError("replay: row " + std::to_string(t + 1) + " has a loss outside [0,1]");
            r.matrix.push_back(x);
        }
    }
    return Environment(std::move(r), d);
}

Environment Environment::replay_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw EnvironmentError("replay: cannot open " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    auto rows = parse_replay_csv(buf.str());
    if (rows.empty()) throw EnvironmentError("replay: " + path.string() + " has no rows");
    const auto d = rows.front().size();
    return replay(d, std::move(rows));
}

Environment Environment::adaptive_frequency(std::size_t d, double scale,
                                            std::optional<std::size_t> window) {
    if (d < 1) throw EnvironmentError("adaptive_frequency: d must be >= 1");
    if (!in_unit_interval(scale)) throw EnvironmentError("adaptive_frequency: scale outside [0,1]");
    if (window && *window < 1) throw EnvironmentError("adaptive_frequency: window must be >= 1");
    return Environment(AdaptiveFrequencyLosses{d, scale, window}, d);
}

std::string_view Environment::kind() const noexcept {
    switch (variant_.index()) {
        case 0: return "bernoulli";
        case 1: return "uniform";
        case 2: return "replay";
        default: return "adaptive_frequency";
    }
}

bool Environment::oblivious() const noexcept {
    return !std::holds_alternative<AdaptiveFrequencyLosses>(variant_);
}

LossVector Environment::next_loss(const History& history, RngStream& stream) const {
    if (history.dimension() != d_) throw DimensionMismatch("next_loss: history dimension mismatch");
    std::vector<double> out(d_);
    if (const auto* b = std::get_if<BernoulliLosses>(&variant_)) {
        for (std::size_t i = 0; i < d_; ++i) out[i] = stream.uniform_open_zero() <= b->means[i] ? 1.0 : 0.0;
    } else if (const auto* u = std::get_if<UniformLosses>(&variant_)) {
        for (std::size_t i = 0; i < d_; ++i) {
            const double x = u->low[i] + (u->high[i] - u->low[i]) * stream.uniform_open_zero();
            out[i] = std::clamp(x, u->low[i], u->high[i]);
        }
    } else if (const auto* r = std::get_if<ReplayLosses>(&variant_)) {
        const auto t = history.rounds();
        if (t >= r->rounds)
            throw ReplayExhausted("replay: round " + std::to_string(t + 1) + " requested but only " +
                                  std::to_string(r->rounds) + " stored");
        std::copy_n(r->matrix.begin() + static_cast<std::ptrdiff_t>(t * d_), d_, out.begin());
    } else {
        const auto& a = std::get<AdaptiveFrequencyLosses>(variant_);
        const auto past = history.rounds();
        const auto span = a.window ? std::min(*a.window, past) : past;
        if (span > 0) {
            for (std::size_t i = 0; i < d_; ++i) {
                const double freq = static_cast<double>(history.count(i, past - span, past)) /
                                    static_cast<double>(span);
                out[i] = std::clamp(a.scale * freq, 0.0, 1.0);
            }
        }
    }
    return LossVector(std::move(out));
}

std::vector<std::vector<double>> parse_replay_csv(std::string_view text) {
    std::vector<std::vector<double>> rows;
    std::size_t line_no = 0;
    std::size_t columns = 0;
    while (!text.empty()) {
        const auto nl = text.find('\n');
        const auto raw = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        ++line_no;
        const auto line = trim(raw);
        if (line.empty()) continue;

        std::vector<double> row;
        std::string_view rest = line;
        while (true) {
            const auto comma = rest.find(',');
            const auto field = trim(rest.substr(0, comma));
            double value = 0.0;
            const auto* first = field.data();
            const auto* last = field.data() + field.size();
            const auto [ptr, ec] = std::from_chars(first, last, value);
            if (field.empty() || ec != std::errc{} || ptr != last)
                throw EnvironmentError("replay: malformed number '" + std::string(field) +
                                       "' on line " + std::to_string(line_no));
            if (!in_unit_interval(value))
                throw EnvironmentError("replay: loss " + std::string(field) + " outside [0,1] on line " +
                                       std::to_string(line_no));
            row.push_back(value);
            if (comma == std::string_view::npos) break;
            rest = rest.substr(comma + 1);
        }
        if (columns == 0) columns = row.size();
        if (row.size() != columns)
            throw EnvironmentError("replay: line " + std::to_string(line_no) + " has " +
                                   std::to_string(row.size()) + " columns, expected " +
                                   std::to_string(columns));
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace fplgr
