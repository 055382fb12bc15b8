#include "mqc/setup_two.hpp"

#include <algorithm>
#include <cmath>

namespace mqc {

namespace {

void require(bool ok, const char* what) {
    if (!ok) throw PreconditionError(what);
}

void check_k(int k) { require(k >= 0, "photon number k must be >= 0"); }

bool is_uniform(const std::array<double, 4>& v) {
    return v[0] == v[1] && v[1] == v[2] && v[2] == v[3];
}

}  // namespace

void DetectorQuad::validate() const {
    for (int i = 0; i < 4; ++i) {
        require(eta[i] > 0.0 && eta[i] < 1.0, "efficiency must lie in (0, 1)");
        require(d[i] >= 0.0 && d[i] < 1.0, "dark-count probability must lie in [0, 1)");
    }
    require(theta >= 0.0 && theta < M_PI / 2, "theta must lie in [0, pi/2)");
}

DetectorQuad DetectorQuad::uniform(double eta, double dark, double theta) {
    DetectorQuad q;
    q.eta = {eta, eta, eta, eta};
    q.d = {dark, dark, dark, dark};
    q.theta = theta;
    return q;
}

std::array<double, 2> quad_q(const QubitState& state, double theta) {
    state.validate();
    const double q0 = 0.5 * (1 + state.rz);
    const double qp = 0.5 * (1 + state.rx * std::cos(theta) + state.rz * std::sin(theta));
    return {std::clamp(q0, 0.0, 1.0), std::clamp(qp, 0.0, 1.0)};
}

std::array<double, 16> quad_event_probs(const DetectorQuad& quad, const QubitState& state, int k) {
    quad.validate();
    check_k(k);
    const auto q = quad_q(state, quad.theta);
    const std::array<double, 4> w = {q[0] / 2, (1 - q[0]) / 2, q[1] / 2, (1 - q[1]) / 2};
    // silent[mask]: probability that every detector in mask stays silent.
    std::array<double, 16> silent{};
    for (int mask = 0; mask < 16; ++mask) {
        double dark = 1.0, absorbed = 0.0;
        for (int i = 0; i < 4; ++i)
            if (mask & (1 << i)) {
                dark *= 1 - quad.d[i];
                absorbed += w[i] * quad.eta[i];
            }
        silent[mask] = dark * std::pow(1 - absorbed, k);
    }
    // Inclusion-exclusion over the clicking set.
    std::array<double, 16> p{};
    for (int clicks = 0; clicks < 16; ++clicks) {
        const int quiet = 15 & ~clicks;
        double acc = 0.0;
        for (int sub = clicks;; sub = (sub - 1) & clicks) {
            const int sign = (__builtin_popcount(sub) % 2 == 0) ? 1 : -1;
            acc += sign * silent[quiet | sub];
            if (sub == 0) break;
        }
        p[clicks] = acc;
    }
    return p;
}

SingleClicks single_click_probs(const DetectorQuad& quad, const QubitState& state, int k) {
    quad.validate();
    check_k(k);
    const auto q = quad_q(state, quad.theta);
    const double q0 = q[0], qp = q[1];
    const auto& e = quad.eta;
    const auto& d = quad.d;
    const double all = std::pow(
        1 - 0.5 * (e[D1] + e[DMinus] + q0 * (e[D0] - e[D1]) + qp * (e[DPlus] - e[DMinus])), k);
    SingleClicks out;
    out.p[D0] = (1 - d[D1]) * (1 - d[DPlus]) * (1 - d[DMinus]) *
                (std::pow(1 - 0.5 * (e[DMinus] + (1 - q0) * e[D1] + qp * (e[DPlus] - e[DMinus])), k) -
                 (1 - d[D0]) * all);
    out.p[D1] = (1 - d[D0]) * (1 - d[DPlus]) * (1 - d[DMinus]) *
                (std::pow(1 - 0.5 * (e[DMinus] + q0 * e[D0] + qp * (e[DPlus] - e[DMinus])), k) -
                 (1 - d[D1]) * all);
    out.p[DPlus] = (1 - d[D0]) * (1 - d[D1]) * (1 - d[DMinus]) *
                   (std::pow(1 - 0.5 * (e[D1] + q0 * (e[D0] - e[D1]) + (1 - qp) * e[DMinus]), k) -
                    (1 - d[DPlus]) * all);
    out.p[DMinus] = (1 - d[D0]) * (1 - d[D1]) * (1 - d[DPlus]) *
                    (std::pow(1 - 0.5 * (e[D1] + q0 * (e[D0] - e[D1]) + qp * e[DPlus]), k) -
                     (1 - d[DMinus]) * all);
    return out;
}

std::array<double, 4> slii_strategy(const std::array<double, 4>& freqs_or_etas) {
    double fmin = freqs_or_etas[0];
    for (double f : freqs_or_etas) {
        require(f > 0.0, "SLII inputs must be positive");
        fmin = std::min(fmin, f);
    }
    std::array<double, 4> s{};
    for (int i = 0; i < 4; ++i) s[i] = fmin / freqs_or_etas[i];
    return s;
}

QuadReport slii_report_probs(const DetectorQuad& quad, const std::array<double, 4>& s,
                             const QubitState& state, int k) {
    for (double v : s) require(v >= 0.0 && v <= 1.0, "report probabilities must lie in [0, 1]");
    const auto p = single_click_probs(quad, state, k).p;
    return {{s[D0] * p[D0] + s[D1] * p[D1], s[DPlus] * p[DPlus] + s[DMinus] * p[DMinus]}};
}

double mpaii_guess(const DetectorQuad& quad, int k) {
    quad.validate();
    check_k(k);
    require(is_uniform(quad.eta) && is_uniform(quad.d),
            "guessing lemma holds only for uniform efficiencies and dark counts");
    const double eta = quad.eta[0], d = quad.d[0];
    const double d3 = std::pow(1 - d, 3);
    const double tail = std::pow(1 - eta, k);
    // x^k - (1-eta)^k = (x - (1-eta)) * sum_j x^j (1-eta)^(k-1-j); keeps r0 == r1 exact at k <= 1.
    auto pow_gap = [&](double x) {
        double s = 0.0, y = 1.0;
        for (int i = 0; i < k; ++i, y *= 1 - eta) s = s * x + y;
        return s;
    };
    const double r0 = d3 * (eta / 2 * pow_gap(1 - eta / 2) + 2 * d * tail);
    const double r1 = 2 * (d3 * (eta / 4 * pow_gap(1 - 3 * eta / 4) + d * tail));
    if (r0 + r1 <= 0.0) return 0.5;
    return std::max(r0, r1) / (r0 + r1);
}

QuadReport rsdcii_report_probs(const DetectorQuad& quad, int k) {
    quad.validate();
    check_k(k);
    require(quad.eta[D0] == quad.eta[D1] && quad.eta[DPlus] == quad.eta[DMinus],
            "pair-click lemma requires eta_0 = eta_1 and eta_+ = eta_-");
    const auto& d = quad.d;
    const double e0 = quad.eta[D0], ep = quad.eta[DPlus];
    const double all_dark = (1 - d[D0]) * (1 - d[D1]) * (1 - d[DPlus]) * (1 - d[DMinus]);
    const double both = all_dark * std::pow(1 - (e0 + ep) / 2, k);
    return {{(1 - d[DPlus]) * (1 - d[DMinus]) * std::pow(1 - ep / 2, k) - both,
             (1 - d[D0]) * (1 - d[D1]) * std::pow(1 - e0 / 2, k) - both}};
}

QuadReport rsdcii_report_probs_general(const DetectorQuad& quad, const QubitState& state, int k) {
    const auto p = quad_event_probs(quad, state, k);
    QuadReport r;
    for (int mask = 1; mask < 16; ++mask) {
        const bool pair0 = mask & 0b0011, pair1 = mask & 0b1100;
        if (pair0 && !pair1) r.p_report[0] += p[mask];
        if (pair1 && !pair0) r.p_report[1] += p[mask];
    }
    return r;
}

double attack2_setup2_guess(double a_dark, double eta0, double etaplus, int k) {
    require(a_dark > 0.0 && a_dark <= 1.0, "dark-count product a must lie in (0, 1]");
    require(eta0 > 0 && eta0 < 1 && etaplus > 0 && etaplus < 1, "efficiencies must lie in (0, 1)");
    require(eta0 != etaplus, "attack requires eta_0 != eta_+");
    check_k(k);
    // Powers are scaled by the dominant one so large k does not underflow; the common factor cancels.
    const double top = k * std::log1p(-std::min(eta0, etaplus) / 2);
    auto scaled = [&](double x) { return std::exp(k * std::log1p(-x) - top); };
    const double both = a_dark * scaled((eta0 + etaplus) / 2);
    const double r0 = scaled(etaplus / 2) - both;
    const double r1 = scaled(eta0 / 2) - both;
    if (r0 + r1 <= 0.0) return 0.5;
    return std::max(r0, r1) / (r0 + r1);
}

double slii_single_photon_gap(double delta, int k) {
    require(delta >= 0.0 && delta < 1.0, "delta must lie in [0, 1)");
    require(k == 0 || k == 1, "the single-photon gap bound holds only for k in {0, 1}");
    return 6.0 * delta;
}

}  // namespace mqc
