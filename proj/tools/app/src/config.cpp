#include "atomq/app/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>

namespace atomq::app {

namespace {

struct KeyInfo {
    const char* key;
    const char* section;
};

constexpr KeyInfo kKeys[] = {
    {"scenario", ""},
    {"g", "system"},          {"kappa", "system"},      {"gamma", "system"},
    {"n_max", "system"},      {"regime_threshold", "system"}, {"model", "system"},
    {"omega_minus", "protocol"}, {"omega", "protocol"}, {"T", "protocol"},
    {"inputs", "protocol"},   {"process", "protocol"},  {"n_qubits", "protocol"},
    {"state", "protocol"},
    {"omega_t", "grid"},      {"vartheta", "grid"},     {"g_t1", "grid"},
    {"g_t2", "grid"},         {"t_end", "grid"},
    {"shots", "sampling"},    {"seed", "sampling"},     {"readout_error", "sampling"},
    {"n_traj", "sampling"},   {"dt", "sampling"},
    {"out", "output"},        {"prefix", "output"},
};

constexpr const char* kSections[] = {"system", "protocol", "grid", "sampling", "output"};

struct Entry {
    std::string value;
    int line = 0;
};

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
        const auto pos = s.find(sep, start);
        parts.push_back(trim(s.substr(start, pos - start)));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return parts;
}

double parse_plain(std::string_view token, std::string_view whole) {
    double v = 0.0;
    const auto* end = token.data() + token.size();
    auto [ptr, ec] = std::from_chars(token.data(), end, v);
    if (ec != std::errc{} || ptr != end) {
        throw ConfigError("cannot parse number '" + std::string(whole) + "'");
    }
    return v;
}

class Reader {
public:
    explicit Reader(std::map<std::string, Entry> entries) : entries_(std::move(entries)) {}

    bool has(const std::string& key) const { return entries_.contains(key); }

    std::string text(const std::string& key) const { return entries_.at(key).value; }

    double number(const std::string& key) const {
        try {
            const double v = parse_number(text(key));
            if (!std::isfinite(v)) throw ConfigError("value is not finite");
            return v;
        } catch (const ConfigError& e) {
            throw ConfigError(where(key) + e.what());
        }
    }

    std::vector<double> list(const std::string& key) const {
        try {
            auto v = parse_list(text(key));
            if (v.empty()) throw ConfigError("list is empty");
            return v;
        } catch (const ConfigError& e) {
            throw ConfigError(where(key) + e.what());
        }
    }

    std::uint64_t integer(const std::string& key) const {
        const double v = number(key);
        if (v < 0.0 || v != std::floor(v) || v > 1.8e19) {
            throw ConfigError(where(key) + "expected a non-negative integer");
        }
        return static_cast<std::uint64_t>(v);
    }

    void require(const std::string& key, Scenario s) const {
        if (!has(key)) {
            throw ConfigError("missing required key '" + key + "' for scenario " +
                              std::string(to_string(s)));
        }
    }

    std::string where(const std::string& key) const {
        return "line " + std::to_string(entries_.at(key).line) + ", key '" + key + "': ";
    }

private:
    std::map<std::string, Entry> entries_;
};

Scenario parse_scenario(const std::string& s) {
    for (Scenario v : {Scenario::prepare_pair, Scenario::cnot, Scenario::pbg,
                       Scenario::bell_landscape, Scenario::mermin, Scenario::trajectories}) {
        if (s == to_string(v)) return v;
    }
    throw ConfigError("unknown scenario '" + s + "'");
}

void check(bool ok, const Reader& r, const std::string& key, const std::string& msg) {
    if (!ok) throw ConfigError(r.where(key) + msg);
}

}  // namespace

std::string_view to_string(Scenario s) {
    switch (s) {
        case Scenario::prepare_pair: return "prepare_pair";
        case Scenario::cnot: return "cnot";
        case Scenario::pbg: return "pbg";
        case Scenario::bell_landscape: return "bell_landscape";
        case Scenario::mermin: return "mermin";
        case Scenario::trajectories: return "trajectories";
    }
    return "?";
}

double parse_number(std::string_view token) {
    const std::string_view whole = trim(token);
    std::string_view t = whole;
    if (t.empty()) throw ConfigError("empty number");
    const auto pi_pos = t.find("pi");
    if (pi_pos == std::string_view::npos) return parse_plain(t, whole);

    // [sign][factor*]pi[/divisor]
    double factor = 1.0;
    std::string_view head = trim(t.substr(0, pi_pos));
    std::string_view tail = trim(t.substr(pi_pos + 2));
    if (!head.empty()) {
        if (head == "-") {
            factor = -1.0;
        } else if (head == "+") {
            factor = 1.0;
        } else if (head.back() == '*') {
            factor = parse_plain(trim(head.substr(0, head.size() - 1)), whole);
        } else {
            throw ConfigError("cannot parse number '" + std::string(whole) + "'");
        }
    }
    double divisor = 1.0;
    if (!tail.empty()) {
        if (tail.front() != '/') throw ConfigError("cannot parse number '" + std::string(whole) + "'");
        divisor = parse_plain(trim(tail.substr(1)), whole);
        if (divisor == 0.0) throw ConfigError("division by zero in '" + std::string(whole) + "'");
    }
    return factor * std::numbers::pi / divisor;
}

std::vector<double> linspace(double a, double b, std::size_t n) {
    if (n == 0) throw ConfigError("linspace needs n >= 1");
    if (n == 1) return {a};
    std::vector<double> v(n);
    for (std::size_t k = 0; k < n; ++k) {
        v[k] = a + (b - a) * static_cast<double>(k) / static_cast<double>(n - 1);
    }
    return v;
}

std::vector<double> logspace(double a, double b, std::size_t n) {
    if (!(a > 0.0) || !(b > 0.0)) throw ConfigError("logspace endpoints must be positive");
    std::vector<double> exps = linspace(std::log(a), std::log(b), n);
    for (double& e : exps) e = std::exp(e);
    if (n > 1) {
        exps.front() = a;
        exps.back() = b;
    }
    return exps;
}

std::vector<double> parse_list(std::string_view value) {
    const std::string_view v = trim(value);
    for (std::string_view fn : {"linspace", "logspace"}) {
        if (v.starts_with(fn)) {
            std::string_view rest = trim(v.substr(fn.size()));
            if (rest.size() < 2 || rest.front() != '(' || rest.back() != ')') {
                throw ConfigError("malformed " + std::string(fn) + "(...)");
            }
            const auto args = split(rest.substr(1, rest.size() - 2), ',');
            if (args.size() != 3) throw ConfigError(std::string(fn) + " takes (start, stop, count)");
            const double count = parse_number(args[2]);
            if (count < 1 || count != std::floor(count)) {
                throw ConfigError(std::string(fn) + " count must be a positive integer");
            }
            const double a = parse_number(args[0]);
            const double b = parse_number(args[1]);
            const auto n = static_cast<std::size_t>(count);
            return fn == "linspace" ? linspace(a, b, n) : logspace(a, b, n);
        }
    }
    std::vector<double> out;
    for (auto part : split(v, ',')) out.push_back(parse_number(part));
    return out;
}

std::vector<double> ScenarioConfig::pair_durations(double omega_minus_value) const {
    if (t_auto) return {std::numbers::pi / std::abs(omega_minus_value)};
    return durations;
}

ScenarioConfig parse_config(std::string_view text) {
    std::map<std::string, Entry> entries;
    std::string section;
    int line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto nl = text.find('\n', start);
        std::string_view raw = text.substr(start, nl == std::string_view::npos ? text.size() - start : nl - start);
        start = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;

        if (const auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
        const std::string_view line = trim(raw);
        if (line.empty()) continue;

        const std::string at = "line " + std::to_string(line_no) + ": ";
        if (line.front() == '[') {
            if (line.back() != ']') throw ConfigError(at + "malformed section header");
            section = std::string(trim(line.substr(1, line.size() - 2)));
            if (std::none_of(std::begin(kSections), std::end(kSections),
                             [&](const char* s) { return section == s; })) {
                throw ConfigError(at + "unknown section [" + section + "]");
            }
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) throw ConfigError(at + "expected 'key = value'");
        const std::string key(trim(line.substr(0, eq)));
        const std::string value(trim(line.substr(eq + 1)));
        if (key.empty()) throw ConfigError(at + "empty key");
        if (value.empty()) throw ConfigError(at + "empty value for key '" + key + "'");

        const auto* info = std::find_if(std::begin(kKeys), std::end(kKeys),
                                        [&](const KeyInfo& k) { return key == k.key; });
        if (info == std::end(kKeys)) throw ConfigError(at + "unknown key '" + key + "'");
        if (!section.empty() && section != info->section) {
            throw ConfigError(at + "key '" + key + "' does not belong in section [" + section + "]");
        }
        if (entries.contains(key)) throw ConfigError(at + "duplicate key '" + key + "'");
        entries[key] = {value, line_no};
    }

    const Reader r(std::move(entries));
    if (!r.has("scenario")) throw ConfigError("missing required key 'scenario'");
    ScenarioConfig c;
    c.scenario = parse_scenario(r.text("scenario"));
    const Scenario s = c.scenario;

    const bool physical = s == Scenario::prepare_pair || s == Scenario::cnot ||
                          s == Scenario::trajectories;
    if (physical) {
        for (const char* k : {"g", "kappa", "gamma"}) r.require(k, s);
    }
    if (s == Scenario::pbg) r.require("g", s);

    if (r.has("g")) {
        c.g = r.number("g");
        check(c.g > 0.0, r, "g", "coupling must be positive");
    }
    if (r.has("kappa")) {
        c.kappa = r.number("kappa");
        check(c.kappa >= 0.0, r, "kappa", "negative rate");
    }
    if (r.has("gamma")) {
        c.gamma = r.number("gamma");
        check(c.gamma >= 0.0, r, "gamma", "negative rate");
    }
    if (r.has("n_max")) {
        c.n_max = static_cast<std::size_t>(r.integer("n_max"));
        check(c.n_max >= 1, r, "n_max", "Fock truncation must be >= 1");
    }
    if (r.has("regime_threshold")) {
        c.regime_threshold = r.number("regime_threshold");
        check(c.regime_threshold > 0.0, r, "regime_threshold", "must be positive");
    }
    if (r.has("model")) {
        const std::string m = r.text("model");
        check(m == "full" || m == "effective", r, "model", "expected 'full' or 'effective'");
        c.model = m == "full" ? EvolutionModel::full : EvolutionModel::effective;
    }

    if (s == Scenario::prepare_pair) r.require("omega_minus", s);
    if (s == Scenario::cnot) r.require("omega", s);
    if (r.has("omega_minus")) {
        c.omega_minus = r.list("omega_minus");
        for (double w : c.omega_minus) check(w != 0.0 && std::isfinite(w), r, "omega_minus", "must be non-zero");
    }
    if (r.has("omega")) {
        c.omega = r.list("omega");
        for (double w : c.omega) check(w != 0.0 && std::isfinite(w), r, "omega", "must be non-zero");
    }
    if (r.has("T")) {
        const std::string t = r.text("T");
        if (t == "auto") {
            c.t_auto = true;
        } else {
            check(s != Scenario::cnot, r, "T", "the CNOT pulse length is fixed; use T = auto");
            c.t_auto = false;
            c.durations = r.list("T");
            for (double d : c.durations) check(d >= 0.0 && std::isfinite(d), r, "T", "pulse length must be >= 0");
        }
    }
    if (r.has("inputs")) {
        c.inputs.clear();
        const std::string text = r.text("inputs");
        for (auto part : split(text, ',')) {
            const std::string label(part);
            check(label == "00" || label == "01" || label == "10" || label == "11", r, "inputs",
                  "unknown qubit input '" + label + "'");
            c.inputs.push_back(label);
        }
    }
    if (r.has("process")) {
        const std::string p = r.text("process");
        check(p == "pair" || p == "cavity_decay", r, "process", "expected 'pair' or 'cavity_decay'");
        c.process = p == "pair" ? TrajectoryProcess::pair : TrajectoryProcess::cavity_decay;
    }
    if (r.has("n_qubits")) {
        c.n_qubits = static_cast<std::size_t>(r.integer("n_qubits"));
        check(c.n_qubits >= 3 && c.n_qubits <= 12, r, "n_qubits", "must lie in [3, 12]");
    }
    if (r.has("state")) {
        c.state = r.text("state");
        check(c.state == "ghz" || c.state == "zero", r, "state", "expected 'ghz' or 'zero'");
    }

    for (const char* k : {"omega_t", "vartheta", "g_t1", "g_t2", "t_end"}) {
        if (!r.has(k)) continue;
        auto values = r.list(k);
        for (double v : values) check(std::isfinite(v), r, k, "grid values must be finite");
        if (std::string_view(k) == "omega_t") c.omega_t = std::move(values);
        else if (std::string_view(k) == "vartheta") c.vartheta = std::move(values);
        else if (std::string_view(k) == "g_t1") c.g_t1 = std::move(values);
        else if (std::string_view(k) == "g_t2") c.g_t2 = std::move(values);
        else c.t_end = std::move(values);
    }
    if (s == Scenario::bell_landscape) {
        if (c.omega_t.empty()) c.omega_t = linspace(0.0, 2.0 * std::numbers::pi, 101);
        if (c.vartheta.empty()) c.vartheta = linspace(0.0, std::numbers::pi, 101);
    }
    if (s == Scenario::pbg) {
        if (c.g_t1.empty()) c.g_t1 = {std::numbers::pi / 4.0};
        if (c.g_t2.empty()) c.g_t2 = {std::numbers::pi / 2.0};
        for (const char* k : {"g_t1", "g_t2"}) {
            const auto& v = std::string_view(k) == "g_t1" ? c.g_t1 : c.g_t2;
            for (double x : v) {
                if (x < 0.0) throw ConfigError(std::string("key '") + k + "': interaction times must be >= 0");
            }
        }
    }
    if (s == Scenario::trajectories) {
        r.require("t_end", s);
        for (double t : c.t_end) check(t >= 0.0, r, "t_end", "must be >= 0");
        if (c.process == TrajectoryProcess::pair) {
            r.require("omega_minus", s);
            check(c.omega_minus.size() == 1, r, "omega_minus", "trajectories take a single value");
        }
    }

    if (r.has("shots")) c.shots = r.integer("shots");
    if (r.has("seed")) c.seed = r.integer("seed");
    if (r.has("readout_error")) {
        c.readout_error = r.number("readout_error");
        check(c.readout_error >= 0.0 && c.readout_error <= 0.5, r, "readout_error", "must lie in [0, 0.5]");
    }
    if (r.has("n_traj")) {
        c.n_traj = r.integer("n_traj");
        check(c.n_traj >= 1, r, "n_traj", "must be >= 1");
    }
    if (r.has("dt")) {
        c.dt = r.number("dt");
        check(c.dt > 0.0, r, "dt", "must be positive");
    }
    if (r.has("out")) c.out = r.text("out");
    if (r.has("prefix")) c.prefix = r.text("prefix");
    return c;
}

ScenarioConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

}  // namespace atomq::app
