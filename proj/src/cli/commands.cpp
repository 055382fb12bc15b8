#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "mqc/attacks.hpp"
#include "mqc/bounds.hpp"
#include "mqc/cli.hpp"
#include "mqc/theorem.hpp"

namespace mqc::cli {

using nlohmann::json;

namespace {

std::vector<double> parse_list(const std::string& text, const std::string& flag) {
    std::vector<double> v;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            v.push_back(std::stod(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw PreconditionError(flag + ": cannot parse '" + item + "' as a number");
        }
    }
    return v;
}

std::array<double, 2> parse_pair(const std::string& text, const std::string& flag) {
    const auto v = parse_list(text, flag);
    if (v.size() != 2) throw PreconditionError(flag + ": expected two comma-separated values");
    return {v[0], v[1]};
}

std::vector<double> linspace(double lo, double hi, int n) {
    if (n < 1) throw PreconditionError("grid size must be >= 1");
    if (n == 1) return {lo};
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i) v[i] = lo + (hi - lo) * i / (n - 1);
    return v;
}

// Writes to --out when given, otherwise to the command's standard output.
void emit(const std::string& path, std::ostream& out, const std::function<void(std::ostream&)>& body) {
    if (path.empty()) {
        body(out);
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw PreconditionError("cannot open output file " + path);
    body(f);
}

std::string flag_str(bool b) { return b ? "1" : "0"; }

struct Common {
    std::string scenario;
    std::string out;
    std::uint64_t seed = 1;
    std::uint64_t pulses = 1000000;
    unsigned workers = 1;
    bool mc = false;
};

void add_sim_flags(CLI::App* cmd, Common& c) {
    cmd->add_option("--seed", c.seed, "RNG seed (default: MQC_SEED or 1)");
    cmd->add_option("--workers", c.workers, "Monte Carlo worker threads")->check(CLI::PositiveNumber);
    cmd->add_flag("--mc", c.mc, "Add Monte Carlo estimate columns");
}

// ---- probs ----

struct ProbsArgs {
    Common c;
    double eta = 0.12;
    std::optional<double> eta0, eta1;
    double dark = 0.0;
    double cos2a = 0.5;
    std::string state = "0";
    std::string sweep = "mu";
    double from = 0.0, to = 30.0;
    int steps = 31;
    std::string beta = "both";
};

void cmd_probs(const ProbsArgs& a, std::ostream& out) {
    Scenario sc;
    sc.det = DetectorPair::basis_independent(a.eta0.value_or(a.eta), a.eta1.value_or(a.eta), a.dark, a.dark);
    sc.bases.cos2a = a.cos2a;
    sc.state = parse_state(a.state);
    sc.sweep = {a.sweep, a.from, a.to, a.steps};
    if (a.sweep != "mu" && a.sweep != "k") throw PreconditionError("--sweep must be mu or k");
    if (a.from < 0 || a.to < a.from) throw PreconditionError("sweep requires 0 <= from <= to");
    if (a.steps < 1) throw PreconditionError("--steps must be >= 1");
    SimConfig sim{a.c.seed, a.c.pulses, a.c.workers};
    std::vector<double> xs;
    if (!a.c.scenario.empty()) {
        const Scenario file = load_scenario(a.c.scenario);
        if (file.setup != "I") throw ScenarioError("setup: probs supports setup \"I\" only");
        if (file.has("detectors")) {
            sc.det = file.det;
            sc.bases = file.bases;
        }
        if (file.has("attack")) sc.state = file.state;
        if (file.has("sweep")) sc.sweep = file.sweep;
        if (file.seed) sim.seed = *file.seed;
        if (file.pulses) sim.pulses = *file.pulses;
        if (file.workers) sim.workers = *file.workers;
        if (file.has("source") && !file.has("sweep")) {
            if (const auto* c = std::get_if<Coherent>(&file.source)) {
                sc.sweep = {"mu", c->mu, c->mu, 1};
            } else {
                const double k = std::get<FixedK>(file.source).k;
                sc.sweep = {"k", k, k, 1};
            }
        }
    }
    sc.det.validate();
    sc.bases.validate();
    xs = sc.sweep.values();

    std::vector<int> betas;
    if (a.beta == "both") betas = {0, 1};
    else if (a.beta == "0") betas = {0};
    else if (a.beta == "1") betas = {1};
    else throw PreconditionError("--beta must be 0, 1 or both");

    std::vector<std::string> header = {"mu_or_k", "beta", "p00", "p01", "p10", "p11"};
    if (a.c.mc)
        for (const char* h : {"mc_p00", "mc_p01", "mc_p10", "mc_p11", "se_p00", "se_p01", "se_p10", "se_p11"})
            header.emplace_back(h);
    CsvWriter csv(out, header);
    std::uint64_t row = 0;
    for (double x : xs) {
        PulseSpec pulse;
        if (sc.sweep.param == "k") pulse = FixedK{static_cast<int>(x)};
        else if (x == 0.0) pulse = FixedK{0};
        else pulse = Coherent{x};
        for (int b : betas) {
            const auto ev = det_probs(sc.det, overlap_q(sc.state, sc.bases, b), b, pulse);
            std::vector<double> cells = {x, static_cast<double>(b), ev(0, 0), ev(0, 1), ev(1, 0), ev(1, 1)};
            if (a.c.mc) {
                SimConfig cfg = sim;
                cfg.seed = splitmix64(sim.seed + row);
                const auto est = estimate_event_probs(cfg, {sc.det, sc.bases, sc.state, pulse, b});
                for (const auto& e : est) cells.push_back(e.value);
                for (const auto& e : est) cells.push_back(e.std_error);
            }
            csv.row(cells);
            ++row;
        }
    }
}

// ---- attack ----

struct AttackArgs {
    Common c;
    double eta = 0.12;
    double mu_max = 30.0;
    int steps = 31;
    std::uint64_t n = 1000000;
    double a = 0.01;
    std::string p_attack = "0.3,0.6";
    std::string p_protocol = "0.05,0.05";
    std::uint64_t runs = 10000;
    double d0 = 1e-5, d1 = 1e-5, eta0 = 0.12, eta1 = 0.08, mu = 0.05;
    std::uint64_t dp_n = 20000000;
    double s_min = 0.68;
    int m_max = 40;
    double d = 1e-5;
    double quad_eta = 0.1;
    int k_max = 150;
    int k_max2 = 500;
    double theta = 0.0;
    double offset = 0.005;
};

void cmd_attack1(const AttackArgs& a, std::ostream& out) {
    if (a.mu_max < 0) throw PreconditionError("--mu-max must be >= 0");
    std::vector<std::string> header = {"mu", "guess_prob"};
    if (a.c.mc) header.insert(header.end(), {"mc_guess_prob", "mc_stderr"});
    CsvWriter csv(out, header);
    std::uint64_t row = 0;
    for (double mu : linspace(0.0, a.mu_max, a.steps)) {
        std::vector<double> cells = {mu, attack1_guess_coherent(a.eta, mu)};
        if (a.c.mc) {
            const PulseSpec pulse = mu == 0.0 ? PulseSpec{FixedK{0}} : PulseSpec{Coherent{mu}};
            BobConfig bob;
            bob.det = DetectorPair::uniform(a.eta);
            const SimConfig cfg{splitmix64(a.c.seed + row), a.c.pulses, a.c.workers};
            const auto t = run_protocol(cfg, AliceSchedule::single({pulse, QubitState::zero(), "|0>"}), bob, false);
            const auto e = attack1_empirical_guess(t);
            cells.push_back(e.value);
            cells.push_back(e.std_error);
        }
        csv.row(cells);
        ++row;
    }
}

json outcome_json(const AttackOutcome& o) {
    json j;
    j["guess_prob"] = o.guess_prob;
    j["fail_prob_bound"] = o.fail_prob_bound;
    for (const auto& [k, v] : o.intermediates) j[k] = v;
    return j;
}

void cmd_attack2(const AttackArgs& a, std::ostream& out) {
    const auto pa = parse_pair(a.p_attack, "--p-attack");
    const auto pp = parse_pair(a.p_protocol, "--p-protocol");
    json j = outcome_json(attack2_chernoff(a.n, a.a, pa, pp));
    j["params"] = {{"N", a.n}, {"a", a.a}, {"p_attack", pa}, {"p_protocol", pp}};
    if (a.c.mc) {
        const auto e = attack2_empirical_guess(a.n, a.a, pa, pp, a.runs, a.c.seed);
        j["mc"] = {{"guess_prob", e.value}, {"stderr", e.std_error}, {"runs", e.n}, {"seed", a.c.seed}};
    }
    out << j.dump(2) << '\n';
}

void cmd_doublephoton(const AttackArgs& a, std::ostream& out) {
    const DoublePhotonParams p{a.d0, a.d1, a.eta0, a.eta1, a.mu, a.dp_n};
    json j = outcome_json(double_photon_attack(p));
    j["params"] = {{"d0", p.d0}, {"d1", p.d1}, {"eta0", p.eta0}, {"eta1", p.eta1}, {"mu", p.mu}, {"N", p.n}};
    if (a.c.mc) {
        const auto e = double_photon_failure_rate(p, a.runs, a.c.seed);
        j["mc"] = {{"fail_rate", e.value}, {"stderr", e.std_error}, {"runs", e.n}, {"seed", a.c.seed}};
    }
    out << j.dump(2) << '\n';
}

void cmd_coinflip(const AttackArgs& a, std::ostream& out) {
    if (a.m_max < 1) throw PreconditionError("--m-max must be >= 1");
    std::vector<std::string> header = {"M", "success_lower_bound", "failure_term", "double_click_abort_lower_bound",
                                       "double_click_success_ceiling"};
    if (a.c.mc) header.insert(header.end(), {"mc_success", "mc_stderr", "mc_abort"});
    CsvWriter csv(out, header);
    for (int m = 1; m <= a.m_max; ++m) {
        std::vector<double> cells = {static_cast<double>(m), coinflip_attack_success(a.s_min, m),
                                     coinflip_failure_term(a.s_min, m), coinflip_double_click_abort(a.s_min, m),
                                     coinflip_double_click_success_ceiling(a.s_min)};
        if (a.c.mc) {
            CoinFlipConfig cfg;
            cfg.m = m;
            ReportingStrategy st;
            for (int b = 0; b < 2; ++b) st.S[0][1][b] = st.S[1][0][b] = a.s_min;
            cfg.strategy = st;
            cfg.runs = a.runs;
            cfg.seed = splitmix64(a.c.seed + static_cast<std::uint64_t>(m));
            const auto r = run_coinflip_attack(cfg);
            cells.insert(cells.end(), {r.success.value, r.success.std_error, r.abort.value});
        }
        csv.row(cells);
    }
}

void cmd_mpaii(const AttackArgs& a, std::ostream& out) {
    if (a.k_max < 0) throw PreconditionError("--k-max must be >= 0");
    const auto quad = DetectorQuad::uniform(a.quad_eta, a.d, a.theta);
    CsvWriter csv(out, {"k", "guess_prob"});
    for (int k = 0; k <= a.k_max; ++k) csv.row(std::vector<double>{static_cast<double>(k), mpaii_guess(quad, k)});
}

void cmd_setup2_attack2(const AttackArgs& a, std::ostream& out) {
    if (a.k_max2 < 0) throw PreconditionError("--k-max must be >= 0");
    const double eta0 = a.quad_eta + a.offset;
    const double etaplus = a.quad_eta - a.offset;
    const double a_dark = (1 - a.d) * (1 - a.d);
    CsvWriter csv(out, {"k", "guess_prob"});
    for (int k = 0; k <= a.k_max2; ++k)
        csv.row(std::vector<double>{static_cast<double>(k), attack2_setup2_guess(a_dark, eta0, etaplus, k)});
}

// ---- bounds ----

struct BoundsArgs {
    std::string out;
    double delta = 1e-5;
    std::string etas = "0.1,0.3,0.5,0.7,0.9";
    double delta_eff_max = 0.01;
    int steps = 101;
    std::uint64_t pulses = 1;
};

void cmd_bounds(const BoundsArgs& a, std::ostream& out) {
    const auto etas = parse_list(a.etas, "--etas");
    if (a.pulses < 1) throw PreconditionError("--pulses must be >= 1");
    CsvWriter csv(out, {"eta", "delta_eff", "eta_low", "eta_up", "delta", "B_II", "B_II_vacuous", "B_III",
                        "B_III_vacuous", "pulses", "composed_II", "composed_II_vacuous", "composed_III",
                        "composed_III_vacuous"});
    for (double eta : etas) {
        for (double de : linspace(0.0, a.delta_eff_max, a.steps)) {
            const EfficiencyEnvelope env{eta - de, eta + de, a.delta};
            const auto b2 = bound_B_II(env);
            const auto b3 = bound_B_III(env.eta_low, env.eta_up, a.delta);
            const auto c2 = multi_pulse_bound(a.pulses, std::min(b2.value, 1.0));
            const auto c3 = multi_pulse_bound(a.pulses, std::min(b3.value, 1.0));
            csv.row({format_number(eta), format_number(de), format_number(env.eta_low), format_number(env.eta_up),
                     format_number(a.delta), format_number(std::min(b2.value, 1.0)), flag_str(b2.vacuous()),
                     format_number(std::min(b3.value, 1.0)), flag_str(b3.vacuous()), std::to_string(a.pulses),
                     format_number(c2.presented()), flag_str(c2.vacuous()), format_number(c3.presented()),
                     flag_str(c3.vacuous())});
        }
    }
}

// ---- theorem ----

struct TheoremArgs {
    std::string out;
    int grid = 10;
    double eta_lo = 0.05, eta_hi = 0.95;
    double cos2a_lo = 0.05, cos2a_hi = 0.95;
    bool no_slices = false;
    bool extended = false;
    double tol = kDefaultRankTol;
};

void cmd_theorem(const TheoremArgs& a, std::ostream& out, std::ostream& err) {
    const auto etas = linspace(a.eta_lo, a.eta_hi, a.grid);
    const auto cs = linspace(a.cos2a_lo, a.cos2a_hi, a.grid);
    CsvWriter csv(out, {"locus", "eta0", "eta1", "cos2a", "dim", "class", "all_ones_angle", "condition",
                        "ill_conditioned", "near_degenerate"});
    auto point = [&](const char* locus, double e0, double e1, double c) {
        const auto probes = a.extended ? extended_probes(c) : default_probes(c);
        const auto sol = solution_space(build_constraints(e0, e1, c, probes), a.tol);
        const auto cls = classify(sol, e0, e1, c);
        if (!cls.diagnostic.empty()) err << cls.diagnostic << '\n';
        csv.row({locus, format_number(e0), format_number(e1), format_number(c), std::to_string(cls.nullspace_dim),
                 to_string(cls.tag), format_number(cls.all_ones_angle), format_number(sol.condition),
                 flag_str(sol.ill_conditioned), flag_str(cls.near_degenerate)});
    };
    for (double e0 : etas)
        for (double e1 : etas)
            if (e0 != e1)
                for (double c : cs) point("regular", e0, e1, c);
    if (a.no_slices) return;
    for (double e : etas)
        for (double c : cs) point("equal_eta", e, e, c);
    for (double e0 : etas)
        for (double e1 : etas)
            if (e0 != e1) point("identical_bases", e0, e1, 1.0);
}

// ---- protocol ----

struct ProtocolArgs {
    Common c;
    std::string prefix;
};

void cmd_protocol(const ProtocolArgs& a, std::ostream& out) {
    const Scenario sc = load_scenario(a.c.scenario);
    if (sc.setup != "I") throw ScenarioError("setup: protocol supports setup \"I\" only");
    SimConfig sim{sc.seed.value_or(a.c.seed), sc.pulses.value_or(a.c.pulses), sc.workers.value_or(a.c.workers)};
    sim.validate();

    AliceSchedule alice = sc.schedule == "bb84" ? AliceSchedule::random_bb84(sc.source)
                                                : AliceSchedule::single({sc.source, sc.state, "fixed"});
    for (const auto& d : sc.dishonest) {
        if (d.label >= sim.pulses)
            throw ScenarioError("attack.dishonest: label " + std::to_string(d.label) +
                                " is outside the schedule of " + std::to_string(sim.pulses) + " pulses");
        alice.overrides[d.label] = {d.source, d.state, "dishonest"};
    }
    alice.validate();
    const BobConfig bob{sc.det, sc.bases, sc.strategy, sc.basis};
    const bool keep = !a.prefix.empty();
    const Transcript t = run_protocol(sim, alice, bob, keep);

    if (keep) {
        std::ofstream f(a.prefix + ".pulses.csv", std::ios::binary);
        if (!f) throw PreconditionError("cannot write " + a.prefix + ".pulses.csv");
        CsvWriter csv(f, {"index", "class", "k", "beta", "c0", "c1", "m"});
        for (const auto& r : t.records)
            csv.row({std::to_string(r.index), std::to_string(r.cls), std::to_string(r.k), std::to_string(r.beta),
                     std::to_string(r.c0), std::to_string(r.c1), std::to_string(r.m)});
    }

    json s;
    s["pulses"] = t.pulses;
    s["reported"] = t.reported;
    s["m1_fraction"] = t.m1_fraction();
    s["pulses_by_basis"] = t.pulses_by_basis;
    s["reported_by_basis"] = t.reported_by_basis;
    json rate = json::array();
    for (int b = 0; b < 2; ++b)
        rate.push_back(t.pulses_by_basis[b] ? static_cast<double>(t.reported_by_basis[b]) / t.pulses_by_basis[b] : 0.0);
    s["report_rate_by_basis"] = rate;
    json classes = json::array();
    for (std::size_t i = 0; i < alice.classes.size(); ++i)
        classes.push_back({{"label", alice.classes[i].label},
                           {"sent_by_basis", t.sent_by_class[i]},
                           {"reported_by_basis", t.reported_by_class[i]}});
    s["classes"] = classes;
    json by_k = json::object();
    for (const auto& [k, v] : t.reported_by_k) by_k[std::to_string(k)] = v;
    s["reported_by_k"] = by_k;
    const auto g = attack1_empirical_guess(t);
    s["attack1_guess"] = {{"value", g.value}, {"stderr", g.std_error}};
    s["strategy"] = strategy_to_json(sc.strategy);
    s["seed"] = sim.seed;
    s["workers"] = sim.workers;
    if (keep) {
        std::ofstream f(a.prefix + ".summary.json", std::ios::binary);
        if (!f) throw PreconditionError("cannot write " + a.prefix + ".summary.json");
        f << s.dump(2) << '\n';
    } else {
        out << s.dump(2) << '\n';
    }
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Multiphoton attack and detection-probability calculators for mistrustful quantum cryptography",
                 "mqc"};
    app.require_subcommand(1);
    const std::uint64_t env_seed = default_seed(1);

    ProbsArgs pa;
    pa.c.seed = env_seed;
    auto* probs = app.add_subcommand("probs", "Setup I detection probabilities over a mu or k sweep (CSV)");
    probs->add_option("--eta", pa.eta, "Efficiency of both detectors");
    probs->add_option("--eta0", pa.eta0, "Efficiency of D_0 (overrides --eta)");
    probs->add_option("--eta1", pa.eta1, "Efficiency of D_1 (overrides --eta)");
    probs->add_option("--d", pa.dark, "Dark count probability of both detectors");
    probs->add_option("--cos2a", pa.cos2a, "cos^2(a) of the B_1 basis");
    probs->add_option("--state", pa.state, "0, 1, +, - or a Bloch vector rx,ry,rz");
    probs->add_option("--sweep", pa.sweep, "Swept parameter: mu or k");
    probs->add_option("--from", pa.from, "Sweep start");
    probs->add_option("--to", pa.to, "Sweep end");
    probs->add_option("--steps", pa.steps, "Sweep points");
    probs->add_option("--beta", pa.beta, "0, 1 or both");
    probs->add_option("--pulses", pa.c.pulses, "Monte Carlo pulses per row");
    probs->add_option("--scenario", pa.c.scenario, "Scenario file (overrides flags)");
    probs->add_option("--out", pa.c.out, "Output file");
    add_sim_flags(probs, pa.c);

    AttackArgs aa;
    aa.c.seed = env_seed;
    auto* attack = app.add_subcommand("attack", "Multiphoton attack calculators");
    attack->require_subcommand(1);
    auto* a1 = attack->add_subcommand("attack1", "Attack I guessing probability over mu (CSV)");
    a1->add_option("--eta", aa.eta, "Detector efficiency");
    a1->add_option("--mu-max", aa.mu_max, "Largest mean photon number");
    a1->add_option("--steps", aa.steps, "Grid points");
    a1->add_option("--pulses", aa.c.pulses, "Monte Carlo pulses per point");
    a1->add_option("--out", aa.c.out, "Output file");
    add_sim_flags(a1, aa.c);
    auto* a2 = attack->add_subcommand("attack2", "Attack II Chernoff bound (JSON)");
    a2->add_option("--pulses", aa.n, "Number of pulses N");
    a2->add_option("--a", aa.a, "Fraction of attack pulses");
    a2->add_option("--p-attack", aa.p_attack, "Report probabilities of attack pulses, beta=0,1");
    a2->add_option("--p-protocol", aa.p_protocol, "Report probabilities of protocol pulses, beta=0,1");
    a2->add_option("--runs", aa.runs, "Monte Carlo runs");
    a2->add_option("--out", aa.c.out, "Output file");
    add_sim_flags(a2, aa.c);
    auto* dp = attack->add_subcommand("doublephoton", "Double-photon attack (JSON)");
    dp->add_option("--d0", aa.d0, "Dark count probability of D_0");
    dp->add_option("--d1", aa.d1, "Dark count probability of D_1");
    dp->add_option("--eta0", aa.eta0, "Efficiency of D_0");
    dp->add_option("--eta1", aa.eta1, "Efficiency of D_1");
    dp->add_option("--mu", aa.mu, "Mean photon number");
    dp->add_option("--pulses", aa.dp_n, "Number of pulses N");
    dp->add_option("--runs", aa.runs, "Monte Carlo runs");
    dp->add_option("--out", aa.c.out, "Output file");
    add_sim_flags(dp, aa.c);
    auto* cf = attack->add_subcommand("coinflip", "Coin-flipping attack bounds over M (CSV)");
    cf->add_option("--s-min", aa.s_min, "Smallest single-click report probability");
    cf->add_option("--m-max", aa.m_max, "Largest number of pulses M");
    cf->add_option("--runs", aa.runs, "Monte Carlo runs per M");
    cf->add_option("--out", aa.c.out, "Output file");
    add_sim_flags(cf, aa.c);
    auto* mp = attack->add_subcommand("mpaii", "Setup II multiphoton attack I guessing probability over k (CSV)");
    mp->add_option("--eta", aa.quad_eta, "Efficiency of all four detectors");
    mp->add_option("--d", aa.d, "Dark count probability of all four detectors");
    mp->add_option("--k-max", aa.k_max, "Largest photon number");
    mp->add_option("--theta", aa.theta, "B_1 axis angle");
    mp->add_option("--out", aa.c.out, "Output file");
    auto* s2 = attack->add_subcommand("setup2-attack2", "Setup II attack II guessing probability over k (CSV)");
    s2->add_option("--eta", aa.quad_eta, "Central efficiency");
    s2->add_option("--offset", aa.offset, "eta_0 = eta + offset, eta_+ = eta - offset");
    s2->add_option("--d", aa.d, "Dark count probability of all four detectors");
    s2->add_option("--k-max", aa.k_max2, "Largest photon number");
    s2->add_option("--out", aa.c.out, "Output file");

    BoundsArgs ba;
    auto* bounds = app.add_subcommand("bounds", "B_II and B_III over delta_eff (CSV)");
    bounds->add_option("--delta", ba.delta, "Dark count cap delta");
    bounds->add_option("--etas", ba.etas, "Comma-separated central efficiencies");
    bounds->add_option("--delta-eff-max", ba.delta_eff_max, "Largest efficiency half-width");
    bounds->add_option("--steps", ba.steps, "Points per efficiency");
    bounds->add_option("--pulses", ba.pulses, "Pulses N for the composed bound");
    bounds->add_option("--out", ba.out, "Output file");

    TheoremArgs ta;
    auto* theorem = app.add_subcommand("theorem", "Constraint nullspace classification over (eta0, eta1, cos2a) (CSV)");
    theorem->add_option("--grid", ta.grid, "Points per axis");
    theorem->add_option("--eta-lo", ta.eta_lo, "Smallest efficiency");
    theorem->add_option("--eta-hi", ta.eta_hi, "Largest efficiency");
    theorem->add_option("--cos2a-lo", ta.cos2a_lo, "Smallest cos^2(a)");
    theorem->add_option("--cos2a-hi", ta.cos2a_hi, "Largest cos^2(a)");
    theorem->add_flag("--no-slices", ta.no_slices, "Skip the eta0=eta1 and cos2a=1 slices");
    theorem->add_flag("--extended", ta.extended, "Add three-photon probes");
    theorem->add_option("--tol", ta.tol, "Relative rank tolerance");
    theorem->add_option("--out", ta.out, "Output file");

    ProtocolArgs pr;
    pr.c.seed = env_seed;
    auto* protocol = app.add_subcommand("protocol", "Run the protocol harness from a scenario file");
    protocol->add_option("--scenario", pr.c.scenario, "Scenario file")->required();
    protocol->add_option("--out-prefix", pr.prefix, "Write <prefix>.pulses.csv and <prefix>.summary.json");
    protocol->add_option("--seed", pr.c.seed, "RNG seed (default: MQC_SEED or 1)");
    protocol->add_option("--pulses", pr.c.pulses, "Pulses (scenario simulation.pulses takes precedence)");
    protocol->add_option("--workers", pr.c.workers, "Worker threads")->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err);
    }

    try {
        if (*probs) {
            emit(pa.c.out, out, [&](std::ostream& o) { cmd_probs(pa, o); });
        } else if (*attack) {
            if (*a1) emit(aa.c.out, out, [&](std::ostream& o) { cmd_attack1(aa, o); });
            else if (*a2) emit(aa.c.out, out, [&](std::ostream& o) { cmd_attack2(aa, o); });
            else if (*dp) emit(aa.c.out, out, [&](std::ostream& o) { cmd_doublephoton(aa, o); });
            else if (*cf) emit(aa.c.out, out, [&](std::ostream& o) { cmd_coinflip(aa, o); });
            else if (*mp) emit(aa.c.out, out, [&](std::ostream& o) { cmd_mpaii(aa, o); });
            else if (*s2) emit(aa.c.out, out, [&](std::ostream& o) { cmd_setup2_attack2(aa, o); });
        } else if (*bounds) {
            emit(ba.out, out, [&](std::ostream& o) { cmd_bounds(ba, o); });
        } else if (*theorem) {
            emit(ta.out, out, [&](std::ostream& o) { cmd_theorem(ta, o, err); });
        } else if (*protocol) {
            cmd_protocol(pr, out);
        }
    } catch (const ScenarioError& e) {
        err << "scenario error: " << e.what() << '\n';
        return 2;
    } catch (const PreconditionError& e) {
        err << "precondition violated: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    std::vector<const char*> argv;
    argv.push_back("mqc");
    for (const auto& a : args) argv.push_back(a.c_str());
    return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace mqc::cli
