#include "fplgr/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <string>

#include "fplgr/error.hpp"

namespace fplgr {
namespace {

using nlohmann::json;

const json& require(const json& obj, const char* key, const char* where) {
    if (!obj.is_object() || !obj.contains(key))
        throw ConfigError(std::string(where) + ": missing \"" + key + "\"");
    return obj.at(key);
}

template <typename T>
T get_as(const json& value, const char* key) {
    try {
        return value.get<T>();
    } catch (const json::exception&) {
        throw ConfigError(std::string("\"") + key + "\" has the wrong type");
    }
}

std::uint64_t get_count(const json& obj, const char* key, const char* where) {
    const auto& v = require(obj, key, where);
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0))
        throw ConfigError(std::string(where) + ": \"" + key + "\" must be a nonnegative integer");
    return v.get<std::uint64_t>();
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
    std::filesystem::path path(p);
    return path.is_relative() && !base.empty() ? base / path : path;
}

}  // namespace

std::string_view to_string(LearnerKind kind) {
    switch (kind) {
        case LearnerKind::fpl_gr: return "fpl_gr";
        case LearnerKind::fpl_gr_p: return "fpl_gr_p";
        case LearnerKind::fpl_full: return "fpl_full";
        case LearnerKind::exp3: return "exp3";
    }
    return "unknown";
}

std::string_view to_string(FeedbackMode mode) {
    return mode == FeedbackMode::full ? "full" : "semi_bandit";
}

std::vector<Edge> parse_edge_list(std::string_view text) {
    std::vector<Edge> edges;
    std::size_t line_no = 0;
    while (!text.empty()) {
        const auto nl = text.find('\n');
        auto line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        ++line_no;

        std::size_t values[2];
        int found = 0;
        const char* p = line.data();
        const char* end = line.data() + line.size();
        while (p < end) {
            while (p < end && (*p == ' ' || *p == '\t' || *p == '\r')) ++p;
            if (p == end) break;
            if (found == 2) throw ConfigError("edge list line " + std::to_string(line_no) + ": expected two vertices");
            auto [next, ec] = std::from_chars(p, end, values[found]);
            if (ec != std::errc{} || (next < end && *next != ' ' && *next != '\t' && *next != '\r'))
                throw ConfigError("edge list line " + std::to_string(line_no) + ": malformed vertex index");
            ++found;
            p = next;
        }
        if (found == 0) continue;
        if (found != 2) throw ConfigError("edge list line " + std::to_string(line_no) + ": expected two vertices");
        edges.push_back({values[0], values[1]});
    }
    return edges;
}

DecisionSet parse_decision_set(const json& spec, const std::filesystem::path& base_dir) {
    const auto type = get_as<std::string>(require(spec, "type", "decision_set"), "type");
    try {
        if (type == "top_m")
            return DecisionSet::top_m(get_count(spec, "d", "decision_set"), get_count(spec, "m", "decision_set"));
        if (type == "multi_armed")
            return DecisionSet::multi_armed(get_count(spec, "n", "decision_set"));
        if (type == "path_dag") {
            std::string text;
            if (spec.contains("edges_file"))
                text = read_file(resolve(base_dir, get_as<std::string>(spec.at("edges_file"), "edges_file")));
            else
                text = get_as<std::string>(require(spec, "edges", "decision_set"), "edges");
            return DecisionSet::path_dag(get_count(spec, "vertices", "decision_set"), parse_edge_list(text),
                                         get_count(spec, "source", "decision_set"),
                                         get_count(spec, "sink", "decision_set"));
        }
        if (type == "explicit") {
            const auto d = get_count(spec, "d", "decision_set");
            std::vector<Action> actions;
            for (const auto& row : require(spec, "actions", "decision_set"))
                actions.emplace_back(get_as<std::vector<std::uint8_t>>(row, "actions"));
            const auto cap = spec.contains("max_size") ? get_count(spec, "max_size", "decision_set")
                                                       : kDefaultExplicitCap;
            return DecisionSet::explicit_set(d, std::move(actions), cap);
        }
    } catch (const ConfigError&) {
        throw;
    } catch (const Error& e) {
        throw ConfigError(std::string("decision_set: ") + e.what());
    }
    throw ConfigError("decision_set: unknown type \"" + type + "\"");
}

Environment parse_environment(const json& spec, const std::filesystem::path& base_dir) {
    const auto type = get_as<std::string>(require(spec, "type", "environment"), "type");
    try {
        if (type == "bernoulli")
            return Environment::bernoulli(get_as<std::vector<double>>(require(spec, "means", "environment"), "means"));
        if (type == "uniform")
            return Environment::uniform(get_as<std::vector<double>>(require(spec, "low", "environment"), "low"),
                                        get_as<std::vector<double>>(require(spec, "high", "environment"), "high"));
        if (type == "replay")
            return Environment::replay_csv(
                resolve(base_dir, get_as<std::string>(require(spec, "path", "environment"), "path")));
        if (type == "adaptive_frequency") {
            std::optional<std::size_t> window;
            if (spec.contains("window") && !spec.at("window").is_null())
                window = get_count(spec, "window", "environment");
            return Environment::adaptive_frequency(get_count(spec, "d", "environment"),
                                                   get_as<double>(require(spec, "scale", "environment"), "scale"),
                                                   window);
        }
    } catch (const ConfigError&) {
        throw;
    } catch (const Error& e) {
        throw ConfigError(std::string("environment: ") + e.what());
    }
    throw ConfigError("environment: unknown type \"" + type + "\"");
}

ExperimentConfig parse_experiment_config(const json& doc, const std::filesystem::path& base_dir) {
    if (!doc.is_object()) throw ConfigError("config must be a JSON object");

    ExperimentConfig cfg{parse_decision_set(require(doc, "decision_set", "config"), base_dir),
                         parse_environment(require(doc, "environment", "config"), base_dir)};

    const auto learner = get_as<std::string>(require(doc, "learner", "config"), "learner");
    if (learner == "fpl_gr") cfg.learner = LearnerKind::fpl_gr;
    else if (learner == "fpl_gr_p") cfg.learner = LearnerKind::fpl_gr_p;
    else if (learner == "fpl_full") cfg.learner = LearnerKind::fpl_full;
    else if (learner == "exp3") cfg.learner = LearnerKind::exp3;
    else throw ConfigError("unknown learner \"" + learner + "\"");

    if (doc.contains("eta")) cfg.eta = get_as<double>(doc.at("eta"), "eta");
    if (doc.contains("cap_m")) cfg.cap_m = get_count(doc, "cap_m", "config");
    if (doc.contains("beta")) cfg.beta = get_as<double>(doc.at("beta"), "beta");
    cfg.horizon = get_count(doc, "horizon", "config");
    cfg.repetitions = doc.contains("repetitions") ? get_count(doc, "repetitions", "config") : 1;
    cfg.seed = doc.contains("seed") ? get_count(doc, "seed", "config") : 0;

    if (doc.contains("feedback")) {
        const auto fb = get_as<std::string>(doc.at("feedback"), "feedback");
        if (fb == "semi_bandit") cfg.feedback = FeedbackMode::semi_bandit;
        else if (fb == "full") cfg.feedback = FeedbackMode::full;
        else throw ConfigError("unknown feedback mode \"" + fb + "\"");
    } else {
        cfg.feedback = cfg.learner == LearnerKind::fpl_full ? FeedbackMode::full : FeedbackMode::semi_bandit;
    }

    if (doc.contains("checkpoints"))
        cfg.checkpoints = get_as<std::vector<std::uint64_t>>(doc.at("checkpoints"), "checkpoints");
    if (doc.contains("delta")) cfg.delta = get_as<double>(doc.at("delta"), "delta");
    if (doc.contains("output")) cfg.output = resolve(base_dir, get_as<std::string>(doc.at("output"), "output"));
    if (doc.contains("threads")) cfg.threads = static_cast<unsigned>(get_count(doc, "threads", "config"));
    cfg.source = doc;

    validate(cfg);
    return cfg;
}

ExperimentConfig load_experiment_config(const std::filesystem::path& path) {
    json doc;
    try {
        doc = json::parse(read_file(path));
    } catch (const json::parse_error& e) {
        throw ConfigError(path.string() + ": " + e.what());
    }
    return parse_experiment_config(doc, path.parent_path());
}

void validate(const ExperimentConfig& cfg) {
    if (cfg.horizon < 1) throw ConfigError("horizon must be >= 1");
    if (cfg.repetitions < 1) throw ConfigError("repetitions must be >= 1");
    if (cfg.environment.dimension() != cfg.decision_set.dimension())
        throw ConfigError("environment dimension " + std::to_string(cfg.environment.dimension()) +
                          " does not match decision set dimension " +
                          std::to_string(cfg.decision_set.dimension()));
    if (cfg.eta && !(*cfg.eta > 0.0)) throw ConfigError("eta must be > 0");
    if (cfg.cap_m && *cfg.cap_m < 1) throw ConfigError("cap_m must be >= 1");
    if (cfg.beta && !(*cfg.beta > 0.0)) throw ConfigError("beta must be > 0");
    if (!(cfg.delta > 0.0 && cfg.delta < 1.0)) throw ConfigError("delta must be in (0,1)");

    switch (cfg.learner) {
        case LearnerKind::fpl_gr:
            if (cfg.beta) throw ConfigError("beta applies only to fpl_gr_p");
            [[fallthrough]];
        case LearnerKind::fpl_gr_p:
            if (cfg.feedback != FeedbackMode::semi_bandit)
                throw ConfigError(std::string(to_string(cfg.learner)) + " requires semi_bandit feedback");
            break;
        case LearnerKind::fpl_full:
            if (cfg.feedback != FeedbackMode::full) throw ConfigError("fpl_full requires full feedback");
            if (cfg.cap_m || cfg.beta) throw ConfigError("fpl_full takes no cap_m or beta");
            if (!cfg.eta && !cfg.environment.oblivious())
                throw ConfigError("fpl_full on an adaptive environment needs an explicit eta");
            break;
        case LearnerKind::exp3:
            if (cfg.decision_set.max_ones() != 1) throw ConfigError("exp3 requires m = 1");
            if (cfg.feedback != FeedbackMode::semi_bandit) throw ConfigError("exp3 requires semi_bandit feedback");
            if (cfg.cap_m || cfg.beta) throw ConfigError("exp3 takes no cap_m or beta");
            if (cfg.decision_set.size() > kDefaultEnumerateLimit) throw ConfigError("exp3: too many arms");
            break;
    }

    std::uint64_t prev = 0;
    for (auto c : cfg.checkpoints) {
        if (c < 1 || c > cfg.horizon || c <= prev)
            throw ConfigError("checkpoints must be strictly increasing within [1, horizon]");
        prev = c;
    }
}

std::vector<std::uint64_t> resolved_checkpoints(const ExperimentConfig& cfg) {
    if (!cfg.checkpoints.empty()) return cfg.checkpoints;
    std::vector<std::uint64_t> out;
    for (std::uint64_t c = 10; c < cfg.horizon; c *= 10) out.push_back(c);
    out.push_back(cfg.horizon);
    return out;
}

}  // namespace fplgr
