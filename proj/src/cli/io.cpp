#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include "mqc/cli.hpp"

namespace mqc::cli {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
    throw ScenarioError(path + ": " + what);
}

void only_keys(const json& obj, const std::string& path, const std::set<std::string>& allowed) {
    if (!obj.is_object()) fail(path, "expected an object");
    for (const auto& [key, value] : obj.items())
        if (!allowed.count(key)) fail(path + "." + key, "unknown key");
}

double number(const json& j, const std::string& path) {
    if (!j.is_number()) fail(path, "expected a number");
    return j.get<double>();
}

std::int64_t integer(const json& j, const std::string& path) {
    if (!j.is_number_integer() && !j.is_number_unsigned()) fail(path, "expected an integer");
    return j.get<std::int64_t>();
}

std::string text(const json& j, const std::string& path) {
    if (!j.is_string()) fail(path, "expected a string");
    return j.get<std::string>();
}

QubitState state_from_json(const json& j, const std::string& path) {
    if (j.is_string()) {
        try {
            return parse_state(j.get<std::string>());
        } catch (const std::exception& e) {
            fail(path, e.what());
        }
    }
    if (!j.is_array() || j.size() != 3) fail(path, "expected a Bloch vector [rx, ry, rz] or a state name");
    QubitState s{number(j[0], path + "[0]"), number(j[1], path + "[1]"), number(j[2], path + "[2]")};
    try {
        s.validate();
    } catch (const std::exception& e) {
        fail(path, e.what());
    }
    return s;
}

// Accepts a scalar, [x0, x1] (per detector), or [[x00, x01], [x10, x11]] (per detector, basis).
std::array<std::array<double, 2>, 2> pair_table(const json& j, const std::string& path) {
    if (j.is_number()) {
        const double v = j.get<double>();
        return {{{v, v}, {v, v}}};
    }
    if (!j.is_array() || j.size() != 2) fail(path, "expected a number, [x0, x1] or [[x00, x01], [x10, x11]]");
    std::array<std::array<double, 2>, 2> t{};
    for (int i = 0; i < 2; ++i) {
        const auto p = path + "[" + std::to_string(i) + "]";
        if (j[i].is_number()) {
            t[i] = {j[i].get<double>(), j[i].get<double>()};
        } else {
            if (!j[i].is_array() || j[i].size() != 2) fail(p, "expected a number or [x_beta0, x_beta1]");
            t[i] = {number(j[i][0], p + "[0]"), number(j[i][1], p + "[1]")};
        }
    }
    return t;
}

std::array<double, 4> quad_values(const json& j, const std::string& path) {
    if (j.is_number()) {
        const double v = j.get<double>();
        return {v, v, v, v};
    }
    if (!j.is_array() || j.size() != 4) fail(path, "expected a number or [x0, x1, x+, x-]");
    std::array<double, 4> v{};
    for (int i = 0; i < 4; ++i) v[i] = number(j[i], path + "[" + std::to_string(i) + "]");
    return v;
}

PulseSpec source_from_json(const json& j, const std::string& path) {
    only_keys(j, path, {"type", "mu", "k"});
    if (!j.contains("type")) fail(path + ".type", "missing required key");
    const auto type = text(j["type"], path + ".type");
    PulseSpec p;
    if (type == "coherent") {
        if (!j.contains("mu")) fail(path + ".mu", "missing required key");
        if (j.contains("k")) fail(path + ".k", "not allowed for a coherent source");
        p = Coherent{number(j["mu"], path + ".mu")};
    } else if (type == "fixed") {
        if (!j.contains("k")) fail(path + ".k", "missing required key");
        if (j.contains("mu")) fail(path + ".mu", "not allowed for a fixed-k source");
        p = FixedK{static_cast<int>(integer(j["k"], path + ".k"))};
    } else {
        fail(path + ".type", "expected \"coherent\" or \"fixed\"");
    }
    try {
        validate_pulse(p);
    } catch (const std::exception& e) {
        fail(path, e.what());
    }
    return p;
}

}  // namespace

json strategy_to_json(const ReportingStrategy& s) {
    json S = json::array();
    for (int c0 = 0; c0 < 2; ++c0) {
        json a = json::array();
        for (int c1 = 0; c1 < 2; ++c1) a.push_back({s.S[c0][c1][0], s.S[c0][c1][1]});
        S.push_back(a);
    }
    return json{{"S", S}};
}

ReportingStrategy strategy_from_json(const json& j) {
    only_keys(j, "strategy", {"S"});
    if (!j.contains("S")) fail("strategy.S", "missing required key");
    const json& S = j["S"];
    ReportingStrategy s;
    for (int c0 = 0; c0 < 2; ++c0) {
        const auto p0 = "strategy.S[" + std::to_string(c0) + "]";
        if (!S.is_array() || S.size() != 2) fail("strategy.S", "expected a 2x2x2 array (c0, c1, beta)");
        if (!S[c0].is_array() || S[c0].size() != 2) fail(p0, "expected a 2x2 array (c1, beta)");
        for (int c1 = 0; c1 < 2; ++c1) {
            const auto p1 = p0 + "[" + std::to_string(c1) + "]";
            if (!S[c0][c1].is_array() || S[c0][c1].size() != 2) fail(p1, "expected [S_beta0, S_beta1]");
            for (int b = 0; b < 2; ++b) {
                const double v = number(S[c0][c1][b], p1 + "[" + std::to_string(b) + "]");
                if (!(v >= 0.0 && v <= 1.0)) fail(p1 + "[" + std::to_string(b) + "]", "must lie in [0, 1]");
                s.S[c0][c1][b] = v;
            }
        }
    }
    return s;
}

std::vector<double> SweepSpec::values() const {
    std::vector<double> v;
    if (steps <= 1) return {from};
    for (int i = 0; i < steps; ++i) {
        double x = from + (to - from) * i / (steps - 1);
        if (param == "k") x = std::round(x);
        if (v.empty() || v.back() != x) v.push_back(x);
    }
    return v;
}

bool Scenario::has(const std::string& section) const {
    for (const auto& s : sections)
        if (s == section) return true;
    return false;
}

Scenario parse_scenario(const json& j) {
    only_keys(j, "scenario", {"setup", "detectors", "source", "strategy", "attack", "sweep", "simulation"});
    Scenario sc;
    for (const auto& [key, value] : j.items()) sc.sections.push_back(key);

    if (j.contains("setup")) {
        sc.setup = text(j["setup"], "setup");
        if (sc.setup != "I" && sc.setup != "II") fail("setup", "expected \"I\" or \"II\"");
    }

    if (j.contains("detectors")) {
        const json& d = j["detectors"];
        if (sc.setup == "I") {
            only_keys(d, "detectors", {"eta", "d", "cos2a"});
            if (d.contains("eta")) sc.det.eta = pair_table(d["eta"], "detectors.eta");
            sc.det.d = d.contains("d") ? pair_table(d["d"], "detectors.d") : decltype(sc.det.d){};
            if (d.contains("cos2a")) sc.bases.cos2a = number(d["cos2a"], "detectors.cos2a");
            try {
                sc.det.validate();
                sc.bases.validate();
            } catch (const std::exception& e) {
                fail("detectors", e.what());
            }
        } else {
            only_keys(d, "detectors", {"eta", "d", "theta"});
            if (d.contains("eta")) sc.quad.eta = quad_values(d["eta"], "detectors.eta");
            if (d.contains("d")) sc.quad.d = quad_values(d["d"], "detectors.d");
            if (d.contains("theta")) sc.quad.theta = number(d["theta"], "detectors.theta");
            try {
                sc.quad.validate();
            } catch (const std::exception& e) {
                fail("detectors", e.what());
            }
        }
    }

    if (j.contains("source")) sc.source = source_from_json(j["source"], "source");

    if (j.contains("strategy")) {
        const json& s = j["strategy"];
        only_keys(s, "strategy", {"name", "s", "s11", "freqs", "S"});
        if (!s.contains("name")) fail("strategy.name", "missing required key");
        const auto name = text(s["name"], "strategy.name");
        try {
            if (name == "I") {
                sc.strategy = make_strategy_I();
            } else if (name == "II") {
                sc.strategy = make_strategy_II();
            } else if (name == "III") {
                double s0 = 0, s1 = 0;
                if (s.contains("s11")) {
                    if (!s["s11"].is_array() || s["s11"].size() != 2) fail("strategy.s11", "expected [S_110, S_111]");
                    s0 = number(s["s11"][0], "strategy.s11[0]");
                    s1 = number(s["s11"][1], "strategy.s11[1]");
                }
                sc.strategy = make_strategy_III(sc.det, s0, s1);
            } else if (name == "trivial") {
                if (!s.contains("s")) fail("strategy.s", "missing required key");
                sc.strategy = make_trivial(number(s["s"], "strategy.s"));
            } else if (name == "symmetrized") {
                if (!s.contains("freqs")) fail("strategy.freqs", "missing required key");
                sc.strategy = make_symmetrized(pair_table(s["freqs"], "strategy.freqs"));
            } else if (name == "custom") {
                if (!s.contains("S")) fail("strategy.S", "missing required key");
                sc.strategy = strategy_from_json(json{{"S", s["S"]}});
            } else {
                fail("strategy.name", "expected one of I, II, III, trivial, symmetrized, custom");
            }
        } catch (const PreconditionError& e) {
            fail("strategy", e.what());
        }
    }

    if (j.contains("attack")) {
        const json& a = j["attack"];
        only_keys(a, "attack", {"schedule", "state", "basis", "dishonest"});
        if (a.contains("schedule")) {
            sc.schedule = text(a["schedule"], "attack.schedule");
            if (sc.schedule != "fixed" && sc.schedule != "bb84")
                fail("attack.schedule", "expected \"fixed\" or \"bb84\"");
        }
        if (a.contains("state")) sc.state = state_from_json(a["state"], "attack.state");
        if (a.contains("basis")) {
            const json& b = a["basis"];
            if (b.is_string() && b.get<std::string>() == "random")
                sc.basis = BasisPolicy::Random;
            else if (b.is_number_integer() && b.get<int>() == 0)
                sc.basis = BasisPolicy::Fixed0;
            else if (b.is_number_integer() && b.get<int>() == 1)
                sc.basis = BasisPolicy::Fixed1;
            else
                fail("attack.basis", "expected \"random\", 0 or 1");
        }
        if (a.contains("dishonest")) {
            if (!a["dishonest"].is_array()) fail("attack.dishonest", "expected an array");
            for (std::size_t i = 0; i < a["dishonest"].size(); ++i) {
                const auto p = "attack.dishonest[" + std::to_string(i) + "]";
                const json& e = a["dishonest"][i];
                only_keys(e, p, {"label", "source", "state"});
                if (!e.contains("label")) fail(p + ".label", "missing required key");
                DishonestPulse dp;
                const auto label = integer(e["label"], p + ".label");
                if (label < 0) fail(p + ".label", "must be >= 0");
                dp.label = static_cast<std::uint64_t>(label);
                if (e.contains("source")) dp.source = source_from_json(e["source"], p + ".source");
                if (e.contains("state")) dp.state = state_from_json(e["state"], p + ".state");
                sc.dishonest.push_back(dp);
            }
        }
    }

    if (j.contains("sweep")) {
        const json& s = j["sweep"];
        only_keys(s, "sweep", {"param", "from", "to", "steps"});
        if (s.contains("param")) {
            sc.sweep.param = text(s["param"], "sweep.param");
            if (sc.sweep.param != "mu" && sc.sweep.param != "k") fail("sweep.param", "expected \"mu\" or \"k\"");
        }
        if (s.contains("from")) sc.sweep.from = number(s["from"], "sweep.from");
        if (s.contains("to")) sc.sweep.to = number(s["to"], "sweep.to");
        if (s.contains("steps")) {
            sc.sweep.steps = static_cast<int>(integer(s["steps"], "sweep.steps"));
            if (sc.sweep.steps < 1) fail("sweep.steps", "must be >= 1");
        }
        if (sc.sweep.from < 0 || sc.sweep.to < sc.sweep.from) fail("sweep", "requires 0 <= from <= to");
    }

    if (j.contains("simulation")) {
        const json& s = j["simulation"];
        only_keys(s, "simulation", {"seed", "pulses", "workers"});
        if (s.contains("seed")) {
            if (!s["seed"].is_number_unsigned() && !s["seed"].is_number_integer()) fail("simulation.seed", "expected an integer");
            sc.seed = s["seed"].get<std::uint64_t>();
        }
        if (s.contains("pulses")) {
            const auto n = integer(s["pulses"], "simulation.pulses");
            if (n < 1) fail("simulation.pulses", "must be >= 1");
            sc.pulses = static_cast<std::uint64_t>(n);
        }
        if (s.contains("workers")) {
            const auto w = integer(s["workers"], "simulation.workers");
            if (w < 1) fail("simulation.workers", "must be >= 1");
            sc.workers = static_cast<unsigned>(w);
        }
    }
    return sc;
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ScenarioError(path + ": cannot open scenario file");
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw ScenarioError(path + ": invalid JSON: " + e.what());
    }
    return parse_scenario(j);
}

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

CsvWriter::CsvWriter(std::ostream& out, const std::vector<std::string>& header)
    : out_(out), width_(header.size()) {
    row(header);
}

void CsvWriter::row(const std::vector<std::string>& cells) {
    if (cells.size() != width_) throw std::logic_error("CSV row width does not match header");
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) out_ << ',';
        out_ << cells[i];
    }
    out_ << '\n';
}

void CsvWriter::row(const std::vector<double>& cells) {
    std::vector<std::string> s;
    s.reserve(cells.size());
    for (double v : cells) s.push_back(format_number(v));
    row(s);
}

QubitState parse_state(const std::string& t) {
    if (t == "0" || t == "z+") return QubitState::zero();
    if (t == "1" || t == "z-") return QubitState::one();
    if (t == "+" || t == "x+") return QubitState::plus();
    if (t == "-" || t == "x-") return QubitState::minus();
    std::stringstream ss(t);
    std::string item;
    std::vector<double> v;
    while (std::getline(ss, item, ',')) {
        double x = 0;
        const auto r = std::from_chars(item.data(), item.data() + item.size(), x);
        if (r.ec != std::errc() || r.ptr != item.data() + item.size())
            throw PreconditionError("state must be 0, 1, +, - or a Bloch vector 'rx,ry,rz'");
        v.push_back(x);
    }
    if (v.size() != 3) throw PreconditionError("state must be 0, 1, +, - or a Bloch vector 'rx,ry,rz'");
    QubitState s{v[0], v[1], v[2]};
    s.validate();
    return s;
}

}  // namespace mqc::cli
