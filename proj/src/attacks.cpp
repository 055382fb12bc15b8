#include "mqc/attacks.hpp"

#include <cmath>

namespace mqc {

namespace {

void require(bool ok, const char* what) {
    if (!ok) throw PreconditionError(what);
}

}  // namespace

double attack1_guess_coherent(double eta, double mu) {
    require(eta > 0.0 && eta < 1.0, "efficiency must lie in (0, 1)");
    require(mu >= 0.0 && std::isfinite(mu), "mu must be >= 0");
    const double x = std::exp(-mu * eta / 2);
    return 1.0 - 0.5 * (2 * x - x * x);
}

double attack1_guess_general(const EventDistribution& events0, const EventDistribution& events1) {
    events0.validate();
    events1.validate();
    return 0.5 * (events0(1, 0) + events0(0, 1) + events1(0, 0) + events1(1, 1));
}

AttackOutcome attack2_chernoff(std::uint64_t n, double a, std::array<double, 2> p_attack,
                               std::array<double, 2> p_protocol) {
    require(n >= 1, "N must be >= 1");
    require(a > 0.0 && a < 1.0, "attack fraction a must lie in (0, 1)");
    for (int b = 0; b < 2; ++b)
        require(p_attack[b] >= 0 && p_attack[b] <= 1 && p_protocol[b] >= 0 && p_protocol[b] <= 1,
                "report probabilities must lie in [0, 1]");
    const double g0 = a * p_attack[0] + (1 - a) * p_protocol[0];
    const double g1 = a * p_attack[1] + (1 - a) * p_protocol[1];
    require(g1 > g0 && g0 > 0.0, "attack premise violated: requires g_1 > g_0 > 0");
    const double nn = static_cast<double>(n);
    const double delta = (g1 - g0) / (g1 + g0);
    AttackOutcome out;
    const double t0 = std::exp(-nn * g0 * delta * delta / 3);
    const double t1 = std::exp(-nn * g1 * delta * delta / 2);
    out.fail_prob_bound = 0.5 * (t0 + t1);
    out.guess_prob = 1.0 - out.fail_prob_bound;
    out.intermediates = {{"g0", g0}, {"g1", g1}, {"delta", delta}, {"G_N", nn * g0 * (1 + delta)},
                         {"E0", nn * g0}, {"E1", nn * g1}};
    return out;
}

AttackOutcome double_photon_attack(const DoublePhotonParams& p) {
    require(p.d0 >= 0 && p.d0 < 1 && p.d1 >= 0 && p.d1 < 1, "dark-count probabilities must lie in [0, 1)");
    require(p.eta0 > 0 && p.eta0 < 1 && p.eta1 > 0 && p.eta1 < 1, "efficiencies must lie in (0, 1)");
    require(p.eta0 > p.eta1, "double-photon attack requires eta0 > eta1 (so that P_0(1) > P_1(1) > 0)");
    require(p.mu > 0, "mu must be > 0");
    require(p.n >= 1, "N must be >= 1");
    const double silent = (1 - p.d0) * (1 - p.d1);
    const double p0 = 1 - silent * (1 - p.eta0) * (1 - p.eta0);
    const double s = (1 - p.eta0) + (1 - p.eta1);
    const double p1 = 1 - silent / 4 * s * s;
    const double delta = (p0 - p1) / (p0 + p1);
    const double scale = static_cast<double>(p.n) * std::exp(-p.mu) * p.mu * p.mu;
    const double g = scale * p0 * p1 / (4 * (p0 + p1));
    AttackOutcome out;
    out.fail_prob_bound = 0.5 * (std::exp(-scale * p0 * delta * delta / 16) +
                                 std::exp(-scale * p1 * delta * delta / 24));
    out.guess_prob = 1.0 - out.fail_prob_bound;
    out.intermediates = {{"P0_1", p0}, {"P1_1", p1}, {"delta", delta}, {"G", g},
                         {"E0", scale * p0 / 8}, {"E1", scale * p1 / 8}};
    return out;
}

double coinflip_failure_term(double s_min, int m) {
    require(s_min > 0.0 && s_min <= 1.0, "s_min must lie in (0, 1]");
    require(m >= 1, "M must be >= 1");
    return std::pow(1 - s_min / 2, m);
}

double coinflip_attack_success(double s_min, int m) { return 1.0 - coinflip_failure_term(s_min, m); }

double coinflip_double_click_abort(double s_min, int m) {
    require(s_min > 0.0 && s_min <= 1.0, "s_min must lie in (0, 1]");
    require(m >= 1, "M must be >= 1");
    return 1.0 - std::pow(1 - s_min / 8, m);
}

double coinflip_double_click_success_ceiling(double s_min) {
    require(s_min > 0.0 && s_min <= 1.0, "s_min must lie in (0, 1]");
    return 7.0 / 8.0 * s_min;
}

}  // namespace mqc
