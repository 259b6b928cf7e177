#include "dbandit/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

namespace dbandit {

namespace {

std::string join_errors(const std::vector<std::string>& errors) {
    std::ostringstream oss;
    oss << "invalid configuration:";
    for (const auto& e : errors) oss << "\n  - " << e;
    return oss.str();
}

// Minimal TOML value: scalar or homogeneous array of scalars.
struct TomlValue {
    enum class Kind { Integer, Float, Boolean, String, Array } kind;
    long long integer = 0;
    double number = 0.0;
    bool boolean = false;
    std::string text;
    std::vector<TomlValue> items;
};

struct TomlParser {
    std::vector<std::string> errors;

    static std::string trim(const std::string& s) {
        size_t b = s.find_first_not_of(" \t\r");
        if (b == std::string::npos) return "";
        size_t e = s.find_last_not_of(" \t\r");
        return s.substr(b, e - b + 1);
    }

    std::optional<TomlValue> parse_scalar(const std::string& raw, int line) {
        std::string s = trim(raw);
        TomlValue v{};
        if (s.empty()) {
            fail(line, "empty value");
            return std::nullopt;
        }
        if (s.front() == '"') {
            if (s.size() < 2 || s.back() != '"') {
                fail(line, "unterminated string");
                return std::nullopt;
            }
            v.kind = TomlValue::Kind::String;
            v.text = s.substr(1, s.size() - 2);
            return v;
        }
        if (s == "true" || s == "false") {
            v.kind = TomlValue::Kind::Boolean;
            v.boolean = (s == "true");
            return v;
        }
        if (s.find_first_of(".eE") == std::string::npos) {
            try {
                size_t pos = 0;
                long long i = std::stoll(s, &pos);
                if (pos == s.size()) {
                    v.kind = TomlValue::Kind::Integer;
                    v.integer = i;
                    return v;
                }
            } catch (...) {
            }
        }
        try {
            size_t pos = 0;
            double d = std::stod(s, &pos);
            if (pos == s.size()) {
                v.kind = TomlValue::Kind::Float;
                v.number = d;
                return v;
            }
        } catch (...) {
        }
        fail(line, "cannot parse value '" + s + "'");
        return std::nullopt;
    }

    std::optional<TomlValue> parse_value(const std::string& raw, int line) {
        std::string s = trim(raw);
        if (!s.empty() && s.front() == '[') {
            if (s.back() != ']') {
                fail(line, "unterminated array");
                return std::nullopt;
            }
            TomlValue v{};
            v.kind = TomlValue::Kind::Array;
            std::string body = s.substr(1, s.size() - 2);
            std::string item;
            bool in_string = false;
            for (char c : body) {
                if (c == '"') in_string = !in_string;
                if (c == ',' && !in_string) {
                    if (!trim(item).empty()) {
                        auto parsed = parse_scalar(item, line);
                        if (parsed) v.items.push_back(*parsed);
                    }
                    item.clear();
                } else {
                    item += c;
                }
            }
            if (!trim(item).empty()) {
                auto parsed = parse_scalar(item, line);
                if (parsed) v.items.push_back(*parsed);
            }
            return v;
        }
        return parse_scalar(s, line);
    }

    std::map<std::string, TomlValue> parse(const std::string& text) {
        std::map<std::string, TomlValue> out;
        std::istringstream in(text);
        std::string line;
        int lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            // strip comments outside strings
            bool in_string = false;
            std::string stripped;
            for (char c : line) {
                if (c == '"') in_string = !in_string;
                if (c == '#' && !in_string) break;
                stripped += c;
            }
            std::string s = trim(stripped);
            if (s.empty()) continue;
            if (s.front() == '[') {
                fail(lineno, "table headers are not supported; use flat keys");
                continue;
            }
            size_t eq = s.find('=');
            if (eq == std::string::npos) {
                fail(lineno, "expected 'key = value'");
                continue;
            }
            std::string key = trim(s.substr(0, eq));
            if (key.empty()) {
                fail(lineno, "empty key");
                continue;
            }
            if (out.count(key)) fail(lineno, "duplicate key '" + key + "'");
            auto value = parse_value(s.substr(eq + 1), lineno);
            if (value) out.emplace(key, *value);
        }
        return out;
    }

    void fail(int line, const std::string& message) {
        errors.push_back("line " + std::to_string(line) + ": " + message);
    }
};

double as_number(const TomlValue& v) {
    return v.kind == TomlValue::Kind::Integer ? static_cast<double>(v.integer) : v.number;
}

}  // namespace

ConfigError::ConfigError(std::vector<std::string> errs)
    : std::runtime_error(join_errors(errs)), errors(std::move(errs)) {}

std::vector<double> ThetaSpec::expand() const {
    return generated ? expand(count) : values;
}

std::vector<double> ThetaSpec::expand(int n) const {
    if (!generated) return values;
    std::vector<double> out(n);
    for (int i = 0; i < n; ++i) out[i] = start + step * i;
    return out;
}

int ExperimentConfig::num_arms() const {
    return static_cast<int>(theta.expand().size());
}

ParameterSet ExperimentConfig::parameter_set() const {
    return ParameterSet{family, theta.expand()};
}

TrialConfig ExperimentConfig::trial_config() const {
    TrialConfig tc;
    tc.params = parameter_set();
    tc.tdfs.num_players = num_players;
    tc.tdfs.num_arms = num_arms();
    tc.tdfs.base_policy = policies;
    tc.tdfs.coupled = coupled;
    tc.tdfs.pre_agreement = pre_agreement;
    tc.tdfs.delta = delta;
    tc.model = collision_model;
    tc.presence = presence;
    tc.horizon = horizon;
    tc.checkpoints = checkpoints;
    return tc;
}

ExperimentConfig parse_config(const std::string& text) {
    TomlParser parser;
    auto table = parser.parse(text);
    std::vector<std::string> errors = std::move(parser.errors);
    auto fail = [&errors](const std::string& msg) { errors.push_back(msg); };

    static const std::vector<std::string> known = {
        "family", "sigma", "a", "b", "theta", "theta_start", "theta_step", "theta_count",
        "players", "horizon", "trials", "seed", "policy", "policies", "coupled",
        "pre_agreement", "delta", "collision_model", "join", "absence", "checkpoints",
        "output_dir"};
    for (const auto& [key, value] : table)
        if (std::find(known.begin(), known.end(), key) == known.end())
            fail("unknown key '" + key + "'");

    ExperimentConfig cfg;

    auto get = [&table](const std::string& key) -> const TomlValue* {
        auto it = table.find(key);
        return it == table.end() ? nullptr : &it->second;
    };
    auto get_number = [&](const std::string& key, double fallback,
                          bool* found = nullptr) -> double {
        const TomlValue* v = get(key);
        if (found) *found = v != nullptr;
        if (!v) return fallback;
        if (v->kind != TomlValue::Kind::Integer && v->kind != TomlValue::Kind::Float) {
            fail("key '" + key + "' must be numeric");
            return fallback;
        }
        return as_number(*v);
    };
    auto get_integer = [&](const std::string& key, long long fallback) -> long long {
        const TomlValue* v = get(key);
        if (!v) return fallback;
        if (v->kind != TomlValue::Kind::Integer) {
            fail("key '" + key + "' must be an integer");
            return fallback;
        }
        return v->integer;
    };
    auto get_boolean = [&](const std::string& key, bool fallback) -> bool {
        const TomlValue* v = get(key);
        if (!v) return fallback;
        if (v->kind != TomlValue::Kind::Boolean) {
            fail("key '" + key + "' must be a boolean");
            return fallback;
        }
        return v->boolean;
    };
    auto get_string = [&](const std::string& key, const std::string& fallback) -> std::string {
        const TomlValue* v = get(key);
        if (!v) return fallback;
        if (v->kind != TomlValue::Kind::String) {
            fail("key '" + key + "' must be a string");
            return fallback;
        }
        return v->text;
    };

    // family
    std::string family_name = get_string("family", "");
    if (family_name == "bernoulli") cfg.family.kind = RewardKind::Bernoulli;
    else if (family_name == "gaussian") cfg.family.kind = RewardKind::Gaussian;
    else if (family_name == "poisson") cfg.family.kind = RewardKind::Poisson;
    else if (family_name == "exponential") cfg.family.kind = RewardKind::Exponential;
    else fail("key 'family' must be one of bernoulli, gaussian, poisson, exponential");
    cfg.family.sigma = get_number("sigma", 1.0);
    cfg.family.a = get_number("a", 0.0);
    cfg.family.b = get_number("b", 0.0);

    // theta: explicit array xor generator
    bool has_theta = get("theta") != nullptr;
    bool has_generator = get("theta_start") || get("theta_step") || get("theta_count");
    if (has_theta && has_generator) fail("give either 'theta' or theta_start/step/count, not both");
    if (!has_theta && !has_generator) fail("missing 'theta' (or theta_start/step/count)");
    if (has_theta) {
        const TomlValue* v = get("theta");
        if (v->kind != TomlValue::Kind::Array) {
            fail("key 'theta' must be an array");
        } else {
            for (const auto& item : v->items) {
                if (item.kind != TomlValue::Kind::Integer && item.kind != TomlValue::Kind::Float) {
                    fail("key 'theta' must be a numeric array");
                    break;
                }
                cfg.theta.values.push_back(as_number(item));
            }
        }
    } else if (has_generator) {
        cfg.theta.generated = true;
        cfg.theta.start = get_number("theta_start", 0.0);
        cfg.theta.step = get_number("theta_step", 0.0);
        cfg.theta.count = static_cast<int>(get_integer("theta_count", 0));
        if (cfg.theta.count < 2) fail("theta_count must be >= 2");
    }

    cfg.num_players = static_cast<int>(get_integer("players", 1));
    cfg.horizon = static_cast<long>(get_integer("horizon", 1));
    cfg.trials = static_cast<int>(get_integer("trials", 1));
    long long seed = get_integer("seed", 0);
    cfg.seed = static_cast<std::uint64_t>(seed);
    cfg.coupled = get_boolean("coupled", true);
    cfg.pre_agreement = get_boolean("pre_agreement", true);
    cfg.delta = get_number("delta", 0.0);
    cfg.output_dir = get_string("output_dir", "");

    auto parse_policy = [&](const std::string& name) -> std::optional<PolicyKind> {
        if (name == "lai_robbins") return PolicyKind::LaiRobbins;
        if (name == "agrawal") return PolicyKind::AgrawalIndex;
        if (name == "auer") return PolicyKind::AuerIndex;
        fail("unknown policy '" + name + "' (expected lai_robbins, agrawal or auer)");
        return std::nullopt;
    };
    if (get("policy") && get("policies")) fail("give either 'policy' or 'policies', not both");
    if (get("policies")) {
        const TomlValue* v = get("policies");
        if (v->kind != TomlValue::Kind::Array) {
            fail("key 'policies' must be an array of strings");
        } else {
            for (const auto& item : v->items) {
                if (item.kind != TomlValue::Kind::String) {
                    fail("key 'policies' must be an array of strings");
                    break;
                }
                if (auto p = parse_policy(item.text)) cfg.policies.push_back(*p);
            }
        }
    } else {
        std::string name = get_string("policy", "lai_robbins");
        if (auto p = parse_policy(name)) cfg.policies = {*p};
    }

    long long model = get_integer("collision_model", 2);
    if (model == 1) cfg.collision_model = CollisionModel::Model1_Share;
    else if (model == 2) cfg.collision_model = CollisionModel::Model2_NoReward;
    else fail("key 'collision_model' must be 1 or 2");

    std::string cps = get_string("checkpoints", "dense");
    if (cps == "dense") cfg.checkpoints = CheckpointMode::Dense;
    else if (cps == "geometric") cfg.checkpoints = CheckpointMode::Geometric;
    else fail("key 'checkpoints' must be dense or geometric");

    // presence: join = [t1..tM]; absence = ["player:first-last", ...]
    if (get("join") || get("absence")) {
        cfg.presence.assign(std::max(cfg.num_players, 1), PlayerPresence{});
        if (const TomlValue* v = get("join")) {
            if (v->kind != TomlValue::Kind::Array ||
                v->items.size() != static_cast<size_t>(cfg.num_players)) {
                fail("key 'join' must be an integer array of length M");
            } else {
                for (size_t i = 0; i < v->items.size(); ++i) {
                    if (v->items[i].kind != TomlValue::Kind::Integer) {
                        fail("key 'join' must be an integer array");
                        break;
                    }
                    cfg.presence[i].join_time = static_cast<long>(v->items[i].integer);
                }
            }
        }
        if (const TomlValue* v = get("absence")) {
            if (v->kind != TomlValue::Kind::Array) {
                fail("key 'absence' must be an array of \"player:first-last\" strings");
            } else {
                for (const auto& item : v->items) {
                    int player = 0;
                    long first = 0, last = 0;
                    char c1 = 0, c2 = 0;
                    std::istringstream iss(item.kind == TomlValue::Kind::String ? item.text : "");
                    if (!(iss >> player >> c1 >> first >> c2 >> last) || c1 != ':' || c2 != '-' ||
                        player < 1 || player > cfg.num_players) {
                        fail("bad absence entry (expected \"player:first-last\")");
                        continue;
                    }
                    cfg.presence[player - 1].absence_windows.push_back({first, last});
                }
            }
        }
    }

    // Semantic validation; every module-level check re-runs at load.
    if (cfg.trials < 1) fail("trials must be >= 1");
    if (cfg.horizon < 1) fail("horizon must be >= 1");
    std::vector<double> theta = cfg.theta.expand();
    int n = static_cast<int>(theta.size());
    if (n < 2) fail("at least 2 arms required");
    if (cfg.num_players < 1 || cfg.num_players >= std::max(n, 2))
        fail("players must satisfy 1 <= M < N");
    if (cfg.delta != 0.0 && n >= 2 && !(cfg.delta > 0.0 && cfg.delta < 1.0 / n))
        fail("delta must lie in (0, 1/N)");
    if (!cfg.policies.empty() && cfg.policies.size() != 1 &&
        cfg.policies.size() != static_cast<size_t>(cfg.num_players))
        fail("policies must list 1 or M entries");

    double max_theta = theta.empty() ? 0.0 : *std::max_element(theta.begin(), theta.end());
    if (cfg.family.kind == RewardKind::Gaussian && !(cfg.family.sigma > 0.0))
        fail("gaussian family requires sigma > 0");
    if (cfg.family.kind == RewardKind::Poisson) {
        if (!get("a")) cfg.family.a = max_theta;  // default: tight upper bound
        if (!(cfg.family.a >= max_theta) || !(cfg.family.a > 0.0))
            fail("poisson bound 'a' must satisfy a >= max(theta) > 0");
    }
    if (cfg.family.kind == RewardKind::Exponential) {
        if (!get("b")) cfg.family.b = max_theta;
        if (!(cfg.family.b >= max_theta) || !(cfg.family.b > 0.0))
            fail("exponential bound 'b' must satisfy b >= max(theta) > 0");
    }

    if (errors.empty()) {
        try {
            ParameterSet ps = cfg.parameter_set();
            ps.validate();
            rank_arms(ps, cfg.num_players);
            cfg.trial_config().validate();
        } catch (const std::exception& e) {
            fail(e.what());
        }
    }
    if (!errors.empty()) throw ConfigError(std::move(errors));
    return cfg;
}

ExperimentConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError({"cannot open config file: " + path});
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str());
}

}  // namespace dbandit
