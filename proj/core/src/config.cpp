#include "offpol/config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string_view>

#include "offpol/errors.hpp"
#include "offpol/report.hpp"

namespace offpol {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

std::vector<std::string> split_fields(std::string_view s) {
    std::vector<std::string> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
        std::size_t j = i;
        while (j < s.size() && s[j] != ' ' && s[j] != '\t') ++j;
        if (j > i) out.emplace_back(s.substr(i, j - i));
        i = j;
    }
    return out;
}

double parse_double(const std::string& field, const std::string& token, int line) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(token, &pos);
        if (pos != token.size()) throw std::invalid_argument(token);
        return v;
    } catch (const std::exception&) {
        throw ConfigError(field + ": expected a number, got '" + token + "'", line);
    }
}

std::int64_t parse_int(const std::string& field, const std::string& token, int line) {
    try {
        std::size_t pos = 0;
        const long long v = std::stoll(token, &pos);
        if (pos != token.size()) throw std::invalid_argument(token);
        return v;
    } catch (const std::exception&) {
        throw ConfigError(field + ": expected an integer, got '" + token + "'", line);
    }
}

Vector parse_row(const std::string& field, std::string_view rest, int line) {
    Vector row;
    for (const std::string& tok : split_fields(rest)) row.push_back(parse_double(field, tok, line));
    if (row.empty()) throw ConfigError(field + ": expected at least one number", line);
    return row;
}

template <class T>
void set_once(std::optional<T>& slot, T value, const std::string& field, int line) {
    if (slot.has_value()) throw ConfigError(field + ": duplicate key", line);
    slot = std::move(value);
}

Policy policy_from_rows(const std::vector<Vector>& rows, int states, int actions,
                        const std::string& field) {
    if (static_cast<int>(rows.size()) != states)
        throw ConfigError(field + ": expected " + std::to_string(states) + " rows, got " +
                          std::to_string(rows.size()));
    Matrix probs(states, actions);
    for (int s = 0; s < states; ++s) {
        if (static_cast<int>(rows[s].size()) != actions)
            throw ConfigError(field + ": row " + std::to_string(s) + " has " +
                              std::to_string(rows[s].size()) + " entries, expected " +
                              std::to_string(actions));
        for (int a = 0; a < actions; ++a) probs(s, a) = rows[s][a];
    }
    try {
        return Policy(probs);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(field + ": " + e.what());
    }
}

}  // namespace

ExperimentConfig parse_config(std::istream& in) {
    ExperimentConfig config;
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        std::string_view content = trim(raw);
        if (const auto hash = content.find('#'); hash != std::string_view::npos)
            content = trim(content.substr(0, hash));
        if (content.empty()) continue;

        const auto colon = content.find(':');
        if (colon == std::string_view::npos)
            throw ConfigError("expected 'key: value', got '" + std::string(content) + "'", line);
        const std::string key{trim(content.substr(0, colon))};
        const std::string_view rest = trim(content.substr(colon + 1));
        const std::string rest_str{rest};

        if (key == "benchmark") {
            set_once(config.benchmark, rest_str, key, line);
        } else if (key == "name") {
            set_once(config.name, rest_str, key, line);
        } else if (key == "states") {
            set_once(config.states, static_cast<int>(parse_int(key, rest_str, line)), key, line);
        } else if (key == "actions") {
            set_once(config.actions, static_cast<int>(parse_int(key, rest_str, line)), key, line);
        } else if (key == "discount") {
            set_once(config.discount, parse_double(key, rest_str, line), key, line);
        } else if (key == "trans") {
            const auto fields = split_fields(rest);
            if (fields.size() != 4)
                throw ConfigError("trans: expected 's a s' p', got " +
                                  std::to_string(fields.size()) + " fields", line);
            config.transitions.push_back(
                {static_cast<int>(parse_int(key, fields[0], line)),
                 static_cast<int>(parse_int(key, fields[1], line)),
                 static_cast<int>(parse_int(key, fields[2], line)),
                 parse_double(key, fields[3], line)});
        } else if (key == "reward") {
            const auto fields = split_fields(rest);
            if (fields.size() != 3)
                throw ConfigError("reward: expected 's a value', got " +
                                  std::to_string(fields.size()) + " fields", line);
            config.rewards.push_back({static_cast<int>(parse_int(key, fields[0], line)),
                                      static_cast<int>(parse_int(key, fields[1], line)),
                                      parse_double(key, fields[2], line)});
        } else if (key == "target") {
            config.target_rows.push_back(parse_row(key, rest, line));
        } else if (key == "behavior") {
            config.behavior_rows.push_back(parse_row(key, rest, line));
        } else if (key == "feature") {
            config.feature_rows.push_back(parse_row(key, rest, line));
        } else if (key == "theta0") {
            set_once(config.theta0, parse_row(key, rest, line), key, line);
        } else if (key == "algo") {
            set_once(config.algorithm, rest_str, key, line);
        } else if (key == "eta") {
            set_once(config.eta, parse_double(key, rest_str, line), key, line);
        } else if (key == "alpha") {
            set_once(config.alpha, parse_double(key, rest_str, line), key, line);
        } else if (key == "beta") {
            set_once(config.beta, parse_double(key, rest_str, line), key, line);
        } else if (key == "schedule") {
            set_once(config.schedule, rest_str, key, line);
        } else if (key == "decay") {
            set_once(config.decay, parse_double(key, rest_str, line), key, line);
        } else if (key == "iters") {
            set_once(config.iterations, parse_int(key, rest_str, line), key, line);
        } else if (key == "runs") {
            set_once(config.runs, static_cast<int>(parse_int(key, rest_str, line)), key, line);
        } else if (key == "seed") {
            set_once(config.seed,
                     static_cast<std::uint64_t>(parse_int(key, rest_str, line)), key, line);
        } else if (key == "stride") {
            set_once(config.stride, parse_int(key, rest_str, line), key, line);
        } else if (key == "out") {
            set_once(config.out, rest_str, key, line);
        } else {
            throw ConfigError("unknown key '" + key + "'", line);
        }
    }
    return config;
}

ExperimentConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open '" + path + "'");
    return parse_config(in);
}

Benchmark make_benchmark(const ExperimentConfig& config) {
    const bool has_inline = config.states || config.actions || config.discount ||
                            !config.transitions.empty() || !config.rewards.empty() ||
                            !config.target_rows.empty() || !config.behavior_rows.empty() ||
                            !config.feature_rows.empty();
    if (config.benchmark) {
        if (has_inline)
            throw ConfigError("benchmark: cannot combine a named benchmark with inline MDP keys");
        auto b = benchmark_by_name(*config.benchmark);
        if (!b) throw ConfigError("benchmark: unknown name '" + *config.benchmark + "'");
        return std::move(*b);
    }
    if (!has_inline) throw ConfigError("benchmark: no benchmark name and no inline MDP given");
    if (!config.states || !config.actions)
        throw ConfigError("states/actions: required for an inline MDP");
    if (!config.discount) throw ConfigError("discount: required for an inline MDP");

    const int states = *config.states;
    const int actions = *config.actions;
    try {
        MdpBuilder builder(states, actions);
        builder.discount(*config.discount);
        for (const auto& t : config.transitions) builder.transition(t.state, t.action, t.next, t.prob);
        for (const auto& r : config.rewards) builder.reward(r.state, r.action, r.value);
        Mdp mdp = builder.build();

        Policy target = policy_from_rows(config.target_rows, states, actions, "target");
        Policy behavior = policy_from_rows(config.behavior_rows, states, actions, "behavior");

        if (static_cast<int>(config.feature_rows.size()) != states)
            throw ConfigError("feature: expected " + std::to_string(states) + " rows, got " +
                              std::to_string(config.feature_rows.size()));
        const int dim = static_cast<int>(config.feature_rows.front().size());
        Matrix phi(states, dim);
        for (int s = 0; s < states; ++s) {
            if (static_cast<int>(config.feature_rows[s].size()) != dim)
                throw ConfigError("feature: row " + std::to_string(s) +
                                  " has inconsistent length");
            for (int c = 0; c < dim; ++c) phi(s, c) = config.feature_rows[s][c];
        }

        Vector theta0 = config.theta0.value_or(Vector(dim, 0.0));
        if (static_cast<int>(theta0.size()) != dim)
            throw ConfigError("theta0: expected " + std::to_string(dim) + " entries, got " +
                              std::to_string(theta0.size()));

        Benchmark b{config.name.value_or("inline"), std::move(mdp), std::move(target),
                    std::move(behavior), FeatureMap(std::move(phi)), std::move(theta0)};
        validate_benchmark(b);
        return b;
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("mdp: ") + e.what());
    }
}

RunConfig make_run_config(const ExperimentConfig& config) {
    RunConfig run;
    if (config.algorithm) {
        auto algo = algorithm_by_name(*config.algorithm);
        if (!algo)
            throw ConfigError("algo: unknown algorithm '" + *config.algorithm +
                              "' (expected td0, perturbed, etd or tdc)");
        run.algorithm = *algo;
    }
    run.eta = config.eta.value_or(0.0);

    const std::string schedule = config.schedule.value_or("constant");
    const double alpha = config.alpha.value_or(0.01);
    try {
        if (schedule == "constant") {
            run.schedule = StepSchedule::constant(alpha);
        } else if (schedule == "polynomial") {
            run.schedule = StepSchedule::polynomial(alpha, config.decay.value_or(1.0));
        } else {
            throw ConfigError("schedule: unknown kind '" + schedule +
                              "' (expected constant or polynomial)");
        }
        run.beta = config.beta;
        run.iterations = config.iterations.value_or(10000);
        run.num_runs = config.runs.value_or(10);
        run.base_seed = config.seed.value_or(0);
        run.eval_stride = config.stride.value_or(100);
        validate_run_config(run);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("run: ") + e.what());
    }
    return run;
}

std::string describe(const Benchmark& benchmark) {
    std::ostringstream out;
    const Mdp& mdp = benchmark.mdp;
    out << "name: " << benchmark.name << '\n';
    out << "states: " << mdp.num_states() << '\n';
    out << "actions: " << mdp.num_actions() << '\n';
    out << "discount: " << format_full(mdp.discount()) << '\n';
    for (int s = 0; s < mdp.num_states(); ++s)
        for (int a = 0; a < mdp.num_actions(); ++a)
            for (int next = 0; next < mdp.num_states(); ++next)
                if (mdp.transition(s, a, next) != 0.0)
                    out << "trans: " << s << ' ' << a << ' ' << next << ' '
                        << format_full(mdp.transition(s, a, next)) << '\n';
    for (int s = 0; s < mdp.num_states(); ++s)
        for (int a = 0; a < mdp.num_actions(); ++a)
            if (mdp.reward(s, a) != 0.0)
                out << "reward: " << s << ' ' << a << ' ' << format_full(mdp.reward(s, a))
                    << '\n';
    auto rows = [&out](const char* key, const Matrix& m) {
        for (std::size_t r = 0; r < m.rows(); ++r) {
            out << key << ':';
            for (std::size_t c = 0; c < m.cols(); ++c) out << ' ' << format_full(m(r, c));
            out << '\n';
        }
    };
    rows("target", benchmark.target.probs());
    rows("behavior", benchmark.behavior.probs());
    rows("feature", benchmark.features.phi());
    out << "theta0:";
    for (double t : benchmark.theta0) out << ' ' << format_full(t);
    out << '\n';
    return out.str();
}

}  // namespace offpol
