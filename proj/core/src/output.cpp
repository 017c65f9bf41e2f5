#include "fplgr/output.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "fplgr/error.hpp"

namespace fplgr {
namespace {

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + path.string());
    out << content;
    if (!out) throw Error("write failed for " + path.string());
}

}  // namespace

std::string format_double(double x) {
    char buf[32];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
    if (ec != std::errc{}) throw Error("format_double failed");
    return std::string(buf, ptr);
}

std::vector<BoundCurve> default_bound_curves(const ExperimentConfig& cfg, const RegretTrace& trace) {
    const auto d = cfg.decision_set.dimension();
    const auto m = cfg.decision_set.max_ones();
    const auto checkpoints = resolved_checkpoints(cfg);

    std::vector<BoundCurve> curves;
    curves.push_back(bound_curve(BoundFormula::theorem1, d, m, checkpoints));
    curves.push_back(bound_curve(BoundFormula::theorem2, d, m, checkpoints, {cfg.delta, std::nullopt}));
    std::vector<double> lstar;
    for (auto c : checkpoints)
        lstar.push_back(c <= trace.per_round.size() ? trace.per_round[c - 1].mean_hindsight_loss : 0.0);
    curves.push_back(theorem3_curve(d, m, checkpoints, lstar));
    return curves;
}

std::string rounds_csv(const RegretTrace& trace, std::uint64_t seed) {
    std::ostringstream out;
    out << "# seed=" << seed << '\n' << kRoundsCsvHeader << '\n';
    for (const auto& r : trace.per_round) {
        out << r.round << ',' << format_double(r.mean_loss) << ',' << format_double(r.mean_cum_loss) << ','
            << format_double(r.mean_regret) << ',' << format_double(r.p95_regret) << ','
            << format_double(r.mean_samples) << '\n';
    }
    return out.str();
}

std::string bounds_csv(const RegretTrace& trace, std::span<const std::uint64_t> checkpoints,
                       std::span<const BoundCurve> curves, std::uint64_t seed) {
    std::ostringstream out;
    out << "# seed=" << seed << '\n' << "checkpoint,mean_regret,p95_regret";
    for (const auto& c : curves) {
        if (c.checkpoints.size() != checkpoints.size())
            throw InvalidArgument("bounds_csv: curve not aligned on checkpoints");
        out << ',' << to_string(c.formula);
    }
    out << '\n';
    for (std::size_t k = 0; k < checkpoints.size(); ++k) {
        const auto t = checkpoints[k];
        if (t < 1 || t > trace.per_round.size()) throw InvalidArgument("bounds_csv: checkpoint beyond horizon");
        const auto& agg = trace.per_round[t - 1];
        out << t << ',' << format_double(agg.mean_regret) << ',' << format_double(agg.p95_regret);
        for (const auto& c : curves) out << ',' << format_double(c.values[k]);
        out << '\n';
    }
    return out.str();
}

nlohmann::json summary_json(const ExperimentConfig& cfg, const RegretTrace& trace,
                            std::span<const BoundCurve> curves) {
    using nlohmann::json;
    json doc;
    doc["config"] = cfg.source;
    doc["seed"] = cfg.seed;
    doc["learner"] = std::string(to_string(cfg.learner));
    doc["feedback"] = std::string(to_string(cfg.feedback));
    doc["decision_set"] = {{"family", std::string(cfg.decision_set.family_name())},
                           {"d", cfg.decision_set.dimension()},
                           {"m", cfg.decision_set.max_ones()},
                           {"size", cfg.decision_set.size()}};
    doc["horizon"] = cfg.horizon;
    doc["repetitions"] = cfg.repetitions;
    doc["aggregate"] = {{"mean_regret", trace.summary.mean_regret},
                        {"stddev_regret", trace.summary.stddev_regret},
                        {"p95_regret", trace.summary.p95_regret},
                        {"mean_hindsight_loss", trace.summary.mean_hindsight_loss},
                        {"mean_total_samples", trace.summary.mean_total_samples}};

    json bounds = json::object();
    for (const auto& c : curves) {
        json points = json::array();
        for (std::size_t k = 0; k < c.checkpoints.size(); ++k)
            points.push_back({{"t", c.checkpoints[k]}, {"value", c.values[k]}});
        bounds[std::string(to_string(c.formula))] = std::move(points);
    }
    doc["bounds"] = std::move(bounds);

    json runs = json::array();
    for (const auto& r : trace.runs) {
        runs.push_back({{"repetition", r.repetition},
                        {"eta", r.eta},
                        {"cap_m", r.cap},
                        {"beta", r.beta},
                        {"final_regret", r.final_regret},
                        {"hindsight_loss", r.hindsight_loss},
                        {"hindsight_action", r.hindsight_action.to_string()},
                        {"total_loss", r.total_loss},
                        {"total_samples", r.total_samples},
                        {"distinct_actions", r.actions.size()}});
    }
    doc["runs"] = std::move(runs);
    return doc;
}

OutputFiles emit_results(const ExperimentConfig& cfg, const RegretTrace& trace,
                         std::span<const BoundCurve> curves, const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw Error("cannot create output directory " + dir.string() + ": " + ec.message());

    const auto checkpoints = resolved_checkpoints(cfg);
    OutputFiles files{dir / "rounds.csv", dir / "summary.json", dir / "bounds.csv"};
    write_file(files.rounds_csv, rounds_csv(trace, cfg.seed));
    write_file(files.summary_json, summary_json(cfg, trace, curves).dump(2) + "\n");
    write_file(files.bounds_csv, bounds_csv(trace, checkpoints, curves, cfg.seed));
    return files;
}

}  // namespace fplgr
