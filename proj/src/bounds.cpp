#include "mqc/bounds.hpp"

#include <algorithm>
#include <cmath>

#include "mqc/optics.hpp"

namespace mqc {

namespace {

void require(bool ok, const char* what) {
    if (!ok) throw PreconditionError(what);
}

void check_delta(double delta) { require(delta >= 0.0 && delta < 0.5, "delta must lie in [0, 1/2)"); }

}  // namespace

void EfficiencyEnvelope::validate() const {
    require(eta_low > 0.0 && eta_low <= eta_up && eta_up < 1.0,
            "envelope requires 0 < eta_low <= eta_up < 1");
    check_delta(delta);
}

double guess_bound_single(double eps_basis, double delta_report) {
    require(eps_basis >= 0.0, "eps_basis must be >= 0");
    require(delta_report >= 0.0 && delta_report <= 1.0, "delta_report must lie in [0, 1]");
    return (0.5 + eps_basis) * (1.0 + delta_report);
}

double envelope_f(const EfficiencyEnvelope& env, double k) {
    return std::pow(1 - env.eta_low, k) - (1 - 2 * env.delta) * std::pow(1 - env.eta_up, k);
}

double envelope_g(double eta_min, double eta_max, double delta, double k) {
    const double rho = eta_min / eta_max;
    return 1 - rho + rho * std::pow(1 - eta_min, k) - (1 - 2 * delta) * std::pow(1 - eta_max, k);
}

// Logs are taken as ln(1-x) via log1p. The gap D = ln(1-lo) - ln(1-up) and the ratio
// ln(1-up)/ln(1-lo) = 1 + D/|ln(1-lo)| are formed without subtracting nearby logs.
BoundDetail bound_B_II(const EfficiencyEnvelope& env) {
    env.validate();
    BoundDetail out;
    const double two_delta = 2 * env.delta;
    const double c = 1 - two_delta;
    if (env.eta_low == env.eta_up) {
        out.value = two_delta;
        out.b_det = out.b_det_unrestricted = 0.0;
        return out;
    }
    const double l_low = std::log1p(-env.eta_low);
    const double l_up = std::log1p(-env.eta_up);
    const double gap = std::log1p((env.eta_up - env.eta_low) / (1 - env.eta_up));
    const double ratio_m1 = gap / -l_low;
    out.b_exp = (std::log(c) + std::log1p(ratio_m1)) / gap;
    out.b_det_unrestricted = c * ratio_m1 * std::exp(l_up * out.b_exp);
    out.b_det = out.b_exp >= 0 ? out.b_det_unrestricted : envelope_f(env, 0.0);
    out.value = std::max(two_delta, out.b_det);
    return out;
}

BoundDetail bound_B_III(double eta_min, double eta_max, double delta) {
    require(eta_min > 0.0 && eta_min <= eta_max && eta_max < 1.0,
            "requires 0 < eta_min <= eta_max < 1");
    check_delta(delta);
    BoundDetail out;
    const double two_delta = 2 * delta;
    const double c = 1 - two_delta;
    if (eta_min == eta_max) {
        out.value = two_delta;
        return out;
    }
    const double l_min = std::log1p(-eta_min);
    const double l_max = std::log1p(-eta_max);
    const double gap = std::log1p((eta_max - eta_min) / (1 - eta_max));
    const double ratio_m1 = gap / -l_min;
    out.b_exp = (std::log(c) + std::log(eta_max / eta_min) + std::log1p(ratio_m1)) / gap;
    out.b_det_unrestricted =
        1 - eta_min / eta_max + c * ratio_m1 * std::exp(l_max * out.b_exp);
    out.b_det = out.b_exp >= 0 ? out.b_det_unrestricted : envelope_g(eta_min, eta_max, delta, 0.0);
    out.value = std::max(two_delta, out.b_det);
    return out;
}

ComposedBound multi_pulse_bound(const std::vector<double>& per_pulse) {
    double sum = 0.0;
    for (double b : per_pulse) {
        require(b >= 0.0 && b <= 1.0, "per-pulse bounds must lie in [0, 1]");
        sum += b;
    }
    return {0.5 + 0.5 * sum};
}

ComposedBound multi_pulse_bound(std::uint64_t n_pulses, double per_pulse) {
    require(per_pulse >= 0.0 && per_pulse <= 1.0, "per-pulse bound must lie in [0, 1]");
    return {0.5 + 0.5 * static_cast<double>(n_pulses) * per_pulse};
}

ComposedBound mixed_pulse_bound(const MixedPulseInputs& in) {
    require(in.eps >= 0.0 && in.eps <= 1.0, "eps must lie in [0, 1]");
    require(0.0 <= in.delta_mult && in.delta_mult <= in.delta_empty && in.delta_empty <= 1.0,
            "requires 0 <= delta_mult <= delta_empty <= 1");
    for (double b : {in.b0, in.b1, in.b_mult})
        require(b >= 0.0 && b <= 1.0, "per-pulse bounds must lie in [0, 1]");
    const double inner = (1 - in.delta_empty) * in.b0 + (in.delta_empty - in.delta_mult) * in.b1 +
                         in.delta_mult * in.b_mult;
    const double n = static_cast<double>(in.n);
    return {in.eps + (1 - in.eps) * (0.5 + 0.5 * n * inner)};
}

}  // namespace mqc
