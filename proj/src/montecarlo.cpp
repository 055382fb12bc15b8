#include "mqc/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>
#include <thread>

namespace mqc {

namespace {

void require(bool ok, const char* what) {
    if (!ok) throw PreconditionError(what);
}

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

bool bernoulli(Rng& rng, double p) {
    if (p <= 0.0) return false;
    if (p >= 1.0) return true;
    return std::uniform_real_distribution<double>(0.0, 1.0)(rng) < p;
}

int binomial(Rng& rng, int n, double p) {
    if (n <= 0 || p <= 0.0) return 0;
    if (p >= 1.0) return n;
    return std::binomial_distribution<int>(n, p)(rng);
}

// Runs body(worker, rng, j) for every pulse j; worker w owns pulses j = w, w+W, ...
template <typename State, typename Body>
std::vector<State> run_workers(const SimConfig& cfg, Body body) {
    cfg.validate();
    std::vector<State> states(cfg.workers);
    auto work = [&](unsigned w) {
        Rng rng = make_stream(cfg.seed, w);
        for (std::uint64_t j = w; j < cfg.pulses; j += cfg.workers) body(states[w], rng, j);
    };
    if (cfg.workers == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < cfg.workers; ++w) pool.emplace_back(work, w);
        for (auto& t : pool) t.join();
    }
    return states;
}

}  // namespace

std::uint64_t splitmix64(std::uint64_t x) {
    x += kGolden;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

Rng make_stream(std::uint64_t seed, std::uint64_t worker) {
    return Rng(splitmix64(splitmix64(seed) ^ ((worker + 1) * kGolden)));
}

std::uint64_t default_seed(std::uint64_t fallback) {
    const char* env = std::getenv("MQC_SEED");
    if (env == nullptr || *env == '\0') return fallback;
    try {
        std::size_t used = 0;
        const auto v = std::stoull(env, &used, 0);
        return used == std::string(env).size() ? v : fallback;
    } catch (const std::exception&) {
        return fallback;
    }
}

Estimate Estimate::from_counts(std::uint64_t hits, std::uint64_t n) {
    Estimate e;
    e.n = n;
    if (n == 0) return e;
    e.value = static_cast<double>(hits) / static_cast<double>(n);
    e.std_error = std::sqrt(e.value * (1 - e.value) / static_cast<double>(n));
    return e;
}

bool Estimate::within(double truth, double n_sigma) const {
    // Standard error under the hypothesised truth; the plug-in error understates it for rare
    // events. A degenerate truth allows the binomial resolution 1/n.
    const double nd = static_cast<double>(n);
    const double se = std::sqrt(std::max(truth * (1 - truth), 0.0) / nd);
    const double slack = se > 0 ? n_sigma * se : 1.0 / nd;
    return std::abs(value - truth) <= slack;
}

void SimConfig::validate() const {
    require(pulses >= 1, "pulses must be >= 1");
    require(workers >= 1, "workers must be >= 1");
}

int sample_photons(Rng& rng, const PulseSpec& pulse) {
    if (const auto* f = std::get_if<FixedK>(&pulse)) return f->k;
    return std::poisson_distribution<int>(std::get<Coherent>(pulse).mu)(rng);
}

Event sample_event(Rng& rng, const DetectorPair& det, double q_beta, int beta, int k) {
    const int k0 = binomial(rng, k, q_beta);
    const int k1 = k - k0;
    Event e;
    e.c0 = bernoulli(rng, 1 - (1 - det.d[0][beta]) * std::pow(1 - det.eta[0][beta], k0)) ? 1 : 0;
    e.c1 = bernoulli(rng, 1 - (1 - det.d[1][beta]) * std::pow(1 - det.eta[1][beta], k1)) ? 1 : 0;
    return e;
}

unsigned sample_event_quad(Rng& rng, const DetectorQuad& quad, const QubitState& state, int k) {
    const auto q = quad_q(state, quad.theta);
    std::array<int, 4> n{};
    if (k <= 32) {
        for (int i = 0; i < k; ++i) {
            if (bernoulli(rng, 0.5))
                ++n[bernoulli(rng, q[0]) ? D0 : D1];
            else
                ++n[bernoulli(rng, q[1]) ? DPlus : DMinus];
        }
    } else {
        // Same law, drawn by counts.
        const int k01 = binomial(rng, k, 0.5);
        n[D0] = binomial(rng, k01, q[0]);
        n[D1] = k01 - n[D0];
        n[DPlus] = binomial(rng, k - k01, q[1]);
        n[DMinus] = k - k01 - n[DPlus];
    }
    unsigned mask = 0;
    for (int i = 0; i < 4; ++i)
        if (bernoulli(rng, 1 - (1 - quad.d[i]) * std::pow(1 - quad.eta[i], n[i]))) mask |= 1u << i;
    return mask;
}

std::array<Estimate, 4> estimate_event_probs(const SimConfig& cfg, const SetupOneScenario& sc) {
    sc.det.validate();
    validate_pulse(sc.pulse);
    const double q = overlap_q(sc.state, sc.bases, sc.beta);
    using Counts = std::array<std::uint64_t, 4>;
    const auto parts = run_workers<Counts>(cfg, [&](Counts& c, Rng& rng, std::uint64_t) {
        const int k = sample_photons(rng, sc.pulse);
        const Event e = sample_event(rng, sc.det, q, sc.beta, k);
        ++c[2 * e.c0 + e.c1];
    });
    Counts total{};
    for (const auto& p : parts)
        for (int i = 0; i < 4; ++i) total[i] += p[i];
    std::array<Estimate, 4> out;
    for (int i = 0; i < 4; ++i) out[i] = Estimate::from_counts(total[i], cfg.pulses);
    return out;
}

std::array<Estimate, 16> estimate_quad_events(const SimConfig& cfg, const DetectorQuad& quad,
                                              const QubitState& state, const PulseSpec& pulse) {
    quad.validate();
    validate_pulse(pulse);
    using Counts = std::array<std::uint64_t, 16>;
    const auto parts = run_workers<Counts>(cfg, [&](Counts& c, Rng& rng, std::uint64_t) {
        ++c[sample_event_quad(rng, quad, state, sample_photons(rng, pulse))];
    });
    Counts total{};
    for (const auto& p : parts)
        for (int i = 0; i < 16; ++i) total[i] += p[i];
    std::array<Estimate, 16> out;
    for (int i = 0; i < 16; ++i) out[i] = Estimate::from_counts(total[i], cfg.pulses);
    return out;
}

QuadReportEstimate estimate_quad_report(const SimConfig& cfg, const DetectorQuad& quad,
                                        const std::array<double, 4>& slii_s,
                                        const QubitState& state, const PulseSpec& pulse,
                                        QuadRule rule) {
    quad.validate();
    validate_pulse(pulse);
    using Counts = std::array<std::uint64_t, 2>;
    const auto parts = run_workers<Counts>(cfg, [&](Counts& c, Rng& rng, std::uint64_t) {
        const unsigned mask = sample_event_quad(rng, quad, state, sample_photons(rng, pulse));
        if (rule == QuadRule::SLII) {
            if (__builtin_popcount(mask) != 1) return;
            const int i = __builtin_ctz(mask);
            if (bernoulli(rng, slii_s[i])) ++c[i < 2 ? 0 : 1];
        } else {
            const bool pair0 = mask & 0b0011, pair1 = mask & 0b1100;
            if (pair0 && !pair1) ++c[0];
            if (pair1 && !pair0) ++c[1];
        }
    });
    Counts total{};
    for (const auto& p : parts) {
        total[0] += p[0];
        total[1] += p[1];
    }
    QuadReportEstimate out;
    out.p_report = {Estimate::from_counts(total[0], cfg.pulses),
                    Estimate::from_counts(total[1], cfg.pulses)};
    out.basis0_given_report = Estimate::from_counts(total[0], total[0] + total[1]);
    return out;
}

void AliceSchedule::validate() const {
    require(!classes.empty(), "schedule needs at least one pulse class");
    require(weights.empty() || weights.size() == classes.size(),
            "schedule weights must match the class list");
    for (double w : weights) require(w >= 0.0, "schedule weights must be nonnegative");
    for (const auto& c : classes) {
        validate_pulse(c.source);
        c.state.validate();
    }
    for (const auto& [j, c] : overrides) {
        validate_pulse(c.source);
        c.state.validate();
    }
}

AliceSchedule AliceSchedule::single(const PulseClass& c) {
    AliceSchedule s;
    s.classes = {c};
    return s;
}

AliceSchedule AliceSchedule::random_bb84(const PulseSpec& source) {
    AliceSchedule s;
    s.classes = {{source, QubitState::zero(), "0"},
                 {source, QubitState::one(), "1"},
                 {source, QubitState::plus(), "+"},
                 {source, QubitState::minus(), "-"}};
    return s;
}

double Transcript::m1_fraction() const {
    return pulses == 0 ? 0.0 : static_cast<double>(reported) / static_cast<double>(pulses);
}

Transcript run_protocol(const SimConfig& cfg, const AliceSchedule& alice, const BobConfig& bob,
                        bool keep_records) {
    alice.validate();
    bob.det.validate();
    bob.bases.validate();
    bob.strategy.validate();
    const std::size_t n_cls = alice.classes.size();
    // q[c][beta] for each class
    std::vector<std::array<double, 2>> q(n_cls);
    for (std::size_t c = 0; c < n_cls; ++c)
        for (int b = 0; b < 2; ++b) q[c][b] = overlap_q(alice.classes[c].state, bob.bases, b);
    std::vector<double> weights = alice.weights;
    if (weights.empty()) weights.assign(n_cls, 1.0);

    auto tally = [n_cls](Transcript& t, const PulseRecord& r) {
        if (t.sent_by_class.empty()) {
            t.sent_by_class.assign(n_cls, {0, 0});
            t.reported_by_class.assign(n_cls, {0, 0});
        }
        ++t.pulses;
        ++t.pulses_by_basis[r.beta];
        if (r.cls >= 0) ++t.sent_by_class[r.cls][r.beta];
        if (r.m) {
            ++t.reported;
            ++t.reported_by_basis[r.beta];
            if (r.cls >= 0) ++t.reported_by_class[r.cls][r.beta];
            ++t.reported_by_k[r.k][r.beta];
        }
    };

    struct Part {
        Transcript t;
        std::discrete_distribution<int> pick;
        bool ready = false;
    };
    const auto parts = run_workers<Part>(cfg, [&](Part& part, Rng& rng, std::uint64_t j) {
        if (!part.ready) {
            part.pick = std::discrete_distribution<int>(weights.begin(), weights.end());
            part.ready = true;
        }
        PulseRecord r;
        r.index = j;
        double qb[2];
        PulseSpec source;
        if (auto it = alice.overrides.find(j); it != alice.overrides.end()) {
            r.cls = -1;
            source = it->second.source;
            qb[0] = overlap_q(it->second.state, bob.bases, 0);
            qb[1] = overlap_q(it->second.state, bob.bases, 1);
        } else {
            r.cls = n_cls == 1 ? 0 : part.pick(rng);
            source = alice.classes[r.cls].source;
            qb[0] = q[r.cls][0];
            qb[1] = q[r.cls][1];
        }
        r.k = sample_photons(rng, source);
        switch (bob.policy) {
            case BasisPolicy::Random: r.beta = bernoulli(rng, 0.5) ? 1 : 0; break;
            case BasisPolicy::Fixed0: r.beta = 0; break;
            case BasisPolicy::Fixed1: r.beta = 1; break;
        }
        const Event e = sample_event(rng, bob.det, qb[r.beta], r.beta, r.k);
        r.c0 = e.c0;
        r.c1 = e.c1;
        r.m = bernoulli(rng, bob.strategy(e.c0, e.c1, r.beta)) ? 1 : 0;
        tally(part.t, r);
        if (keep_records) part.t.records.push_back(r);
    });

    Transcript t;
    t.sent_by_class.assign(n_cls, {0, 0});
    t.reported_by_class.assign(n_cls, {0, 0});
    for (const auto& p : parts) {
        const Transcript& s = p.t;
        t.pulses += s.pulses;
        t.reported += s.reported;
        for (int b = 0; b < 2; ++b) {
            t.pulses_by_basis[b] += s.pulses_by_basis[b];
            t.reported_by_basis[b] += s.reported_by_basis[b];
        }
        for (std::size_t c = 0; c < s.sent_by_class.size(); ++c)
            for (int b = 0; b < 2; ++b) {
                t.sent_by_class[c][b] += s.sent_by_class[c][b];
                t.reported_by_class[c][b] += s.reported_by_class[c][b];
            }
        for (const auto& [k, v] : s.reported_by_k) {
            t.reported_by_k[k][0] += v[0];
            t.reported_by_k[k][1] += v[1];
        }
    }
    if (keep_records) {
        t.records.resize(cfg.pulses);
        for (const auto& p : parts)
            for (const auto& r : p.t.records) t.records[r.index] = r;
    }
    return t;
}

Estimate attack1_empirical_guess(const Transcript& t) {
    require(t.pulses > 0, "transcript has no pulses");
    // Correct guesses: reported pulses in basis 0 plus unreported pulses in basis 1.
    const std::uint64_t hits = t.reported_by_basis[0] + (t.pulses_by_basis[1] - t.reported_by_basis[1]);
    return Estimate::from_counts(hits, t.pulses);
}

Estimate double_photon_failure_rate(const DoublePhotonParams& p, std::uint64_t runs,
                                    std::uint64_t seed) {
    const AttackOutcome a = double_photon_attack(p);
    const double scale = std::exp(-p.mu) * p.mu * p.mu / 8;
    const std::array<double, 2> rate = {scale * a.at("P0_1"), scale * a.at("P1_1")};
    const double g = a.at("G");
    std::uint64_t fails = 0;
    for (std::uint64_t r = 0; r < runs; ++r) {
        Rng rng = make_stream(seed, r);
        const int beta = bernoulli(rng, 0.5) ? 1 : 0;
        std::binomial_distribution<std::int64_t> draw(static_cast<std::int64_t>(p.n), rate[beta]);
        const double n_rep = static_cast<double>(draw(rng));
        const int guess = n_rep <= g ? 1 : 0;
        fails += guess != beta;
    }
    return Estimate::from_counts(fails, runs);
}

Estimate attack2_empirical_guess(std::uint64_t n, double a, std::array<double, 2> p_attack,
                                 std::array<double, 2> p_protocol, std::uint64_t runs,
                                 std::uint64_t seed) {
    const AttackOutcome out = attack2_chernoff(n, a, p_attack, p_protocol);
    const double g_n = out.at("G_N");
    const auto n_att = static_cast<std::int64_t>(std::llround(a * static_cast<double>(n)));
    const auto n_prot = static_cast<std::int64_t>(n) - n_att;
    std::uint64_t hits = 0;
    for (std::uint64_t r = 0; r < runs; ++r) {
        Rng rng = make_stream(seed, r);
        const int beta = bernoulli(rng, 0.5) ? 1 : 0;
        std::binomial_distribution<std::int64_t> att(n_att, p_attack[beta]);
        std::binomial_distribution<std::int64_t> prot(n_prot, p_protocol[beta]);
        const double z = static_cast<double>(att(rng) + prot(rng));
        const int guess = z < g_n ? 0 : 1;
        hits += guess == beta;
    }
    return Estimate::from_counts(hits, runs);
}

namespace {

// Amplitudes of |Phi_{alpha,gamma}> in the computational basis.
std::array<double, 2> coin_state(double y, int alpha, int gamma) {
    const double s = alpha == 0 ? 1.0 : -1.0;
    if (gamma == 0) return {std::sqrt(y), s * std::sqrt(1 - y)};
    return {std::sqrt(1 - y), -s * std::sqrt(y)};
}

}  // namespace

CoinFlipResult run_coinflip_attack(const CoinFlipConfig& cfg) {
    require(cfg.m >= 1, "M must be >= 1");
    require(cfg.k >= 0, "k must be >= 0");
    require(cfg.y > 0.5 && cfg.y < 1.0, "y must lie in (1/2, 1)");
    require(cfg.runs >= 1, "runs must be >= 1");
    cfg.strategy.validate();
    const DetectorPair det = DetectorPair::uniform(cfg.eta, cfg.dark);
    det.validate();
    std::uint64_t success = 0, aborts = 0, none = 0;
    for (std::uint64_t run = 0; run < cfg.runs; ++run) {
        Rng rng = make_stream(cfg.seed, run);
        const int a = bernoulli(rng, 0.5) ? 1 : 0;  // Alice's desired outcome
        bool found = false;
        int alpha_j = 0, gamma_j = 0, beta_j = 0, o_j = 0;
        for (int i = 0; i < cfg.m && !found; ++i) {
            const int alpha = bernoulli(rng, 0.5) ? 1 : 0;
            const int gamma = bernoulli(rng, 0.5) ? 1 : 0;
            const int beta = bernoulli(rng, 0.5) ? 1 : 0;
            const auto psi = coin_state(cfg.y, alpha, gamma);
            const auto b0 = coin_state(cfg.y, beta, 0);
            const double amp = psi[0] * b0[0] + psi[1] * b0[1];
            const double q = std::clamp(amp * amp, 0.0, 1.0);
            const Event e = sample_event(rng, det, q, beta, cfg.k);
            if (!bernoulli(rng, cfg.strategy(e.c0, e.c1, beta))) continue;
            if (e.c0 == 0 && e.c1 == 0) continue;  // nothing to assign
            found = true;
            alpha_j = alpha;
            gamma_j = gamma;
            beta_j = beta;
            if (e.c0 && e.c1)
                o_j = bernoulli(rng, 0.5) ? 1 : 0;
            else
                o_j = e.c0 ? 0 : 1;
        }
        if (!found) {
            ++none;
            continue;
        }
        const int b = bernoulli(rng, 0.5) ? 1 : 0;
        const int gamma_t = b ^ a;
        const int alpha_t = gamma_t == gamma_j ? alpha_j : alpha_j ^ 1;
        if (alpha_t == beta_j && o_j != gamma_t) {
            ++aborts;
            continue;
        }
        if ((gamma_t ^ b) == a) ++success;
    }
    return {Estimate::from_counts(success, cfg.runs), Estimate::from_counts(aborts, cfg.runs),
            Estimate::from_counts(none, cfg.runs)};
}

}  // namespace mqc
