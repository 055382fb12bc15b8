#pragma once

#include <cstdint>
#include <vector>

namespace mqc {

struct EfficiencyEnvelope {
    double eta_low = 0.5;
    double eta_up = 0.5;
    double delta = 0.0;

    void validate() const;
};

// value = max{2 delta, b_det}. b_det is evaluated at max(b_exp, 0): the maximizer of the
// k-continuous envelope restricted to physical photon numbers. b_det_unrestricted is the
// same expression taken verbatim at b_exp, which differs only when b_exp < 0.
struct BoundDetail {
    double value = 0.0;
    double b_exp = 0.0;
    double b_det = 0.0;
    double b_det_unrestricted = 0.0;
    bool vacuous() const { return value > 1.0; }
};

struct ComposedBound {
    double value = 0.0;
    bool vacuous() const { return value > 1.0; }
    double presented() const { return value > 1.0 ? 1.0 : value; }
};

double guess_bound_single(double eps_basis, double delta_report);

BoundDetail bound_B_II(const EfficiencyEnvelope& env);
BoundDetail bound_B_III(double eta_min, double eta_max, double delta);

// Envelopes whose maximizer is searched by brute force; used to cross-check the closed forms.
double envelope_f(const EfficiencyEnvelope& env, double k);
double envelope_g(double eta_min, double eta_max, double delta, double k);

ComposedBound multi_pulse_bound(const std::vector<double>& per_pulse);
ComposedBound multi_pulse_bound(std::uint64_t n_pulses, double per_pulse);

struct MixedPulseInputs {
    std::uint64_t n = 1;
    double eps = 0.0;
    double delta_empty = 1.0;
    double delta_mult = 0.0;
    double b0 = 0.0;
    double b1 = 0.0;
    double b_mult = 0.0;
};

ComposedBound mixed_pulse_bound(const MixedPulseInputs& in);

}  // namespace mqc
