#include "mqc/reporting.hpp"

#include <algorithm>
#include <cmath>

namespace mqc {

namespace {

void require(bool ok, const char* what) {
    if (!ok) throw PreconditionError(what);
}

ReportingStrategy filled(double v) {
    ReportingStrategy s;
    for (auto& a : s.S)
        for (auto& b : a) b = {v, v};
    return s;
}

}  // namespace

void ReportingStrategy::validate() const {
    for (const auto& a : S)
        for (const auto& b : a)
            for (double v : b) require(v >= 0.0 && v <= 1.0, "report probabilities must lie in [0, 1]");
}

double ReportingStrategy::min_single_click() const {
    return std::min({S[0][1][0], S[0][1][1], S[1][0][0], S[1][0][1]});
}

ReportingStrategy make_strategy_I() {
    ReportingStrategy s = filled(0.0);
    for (int b = 0; b < 2; ++b) s.S[0][1][b] = s.S[1][0][b] = 1.0;
    return s;
}

ReportingStrategy make_strategy_II() {
    ReportingStrategy s = filled(1.0);
    s.S[0][0] = {0.0, 0.0};
    return s;
}

ReportingStrategy make_strategy_III(const DetectorPair& det, double s11_0, double s11_1) {
    det.validate();
    require(s11_0 >= 0.0 && s11_0 <= 1.0 && s11_1 >= 0.0 && s11_1 <= 1.0,
            "S_11 entries must lie in [0, 1]");
    const double emin = det.eta_min();
    ReportingStrategy s = filled(0.0);
    for (int b = 0; b < 2; ++b) {
        s.S[0][1][b] = emin / det.eta[1][b];
        s.S[1][0][b] = emin / det.eta[0][b];
    }
    s.S[1][1] = {s11_0, s11_1};
    return s;
}

ReportingStrategy make_trivial(double s) {
    require(s > 0.0 && s <= 1.0, "trivial strategy requires 0 < S <= 1 (S=0 never reports a successful measurement)");
    return filled(s);
}

ReportingStrategy make_symmetrized(const SingleClickFreqs& freq) {
    double fmin = 1.0;
    for (const auto& row : freq)
        for (double f : row) {
            require(f > 0.0, "single-click frequencies must be positive");
            fmin = std::min(fmin, f);
        }
    ReportingStrategy s = filled(0.0);
    for (int c = 0; c < 2; ++c)
        for (int b = 0; b < 2; ++b) s.S[c][1 - c][b] = fmin / freq[c][b];
    return s;
}

double report_prob(const ReportingStrategy& strategy, const EventDistribution& events, int beta) {
    require(beta == 0 || beta == 1, "beta must be 0 or 1");
    strategy.validate();
    double acc = 0.0;
    for (int c0 = 0; c0 < 2; ++c0)
        for (int c1 = 0; c1 < 2; ++c1) acc += strategy.S[c0][c1][beta] * events.p[c0][c1];
    return std::clamp(acc, 0.0, 1.0);
}

double lemma1_bound(double delta, double s11_max, int k) {
    require(delta >= 0.0 && delta < 1.0, "delta must lie in [0, 1)");
    require(s11_max >= 0.0 && s11_max <= 1.0, "s11_max must lie in [0, 1]");
    require(k == 0 || k == 1, "the single-photon bound holds only for k in {0, 1}");
    if (k == 0) return 2.0 * delta;
    return 6.0 * delta + 2.0 * delta * delta + s11_max * (5.0 * delta + delta * delta);
}

FeasibilityVerdict trivial_feasibility(const FeasibilityInputs& in) {
    for (double v : {in.delta00_I, in.delta11_I, in.delta_err_equal, in.delta_err_diff,
                     in.delta_error, in.delta00_II, in.delta_det})
        require(v >= 0.0 && v < 1.0, "feasibility parameters must lie in [0, 1)");
    FeasibilityVerdict v;
    v.first_lhs = (in.delta00_I + in.delta11_I) * (0.5 + in.delta_err_equal) + in.delta_err_diff;
    v.first_rhs = in.delta_error;
    v.first_class_ok = v.first_lhs <= v.first_rhs;

    v.det_lhs = in.delta_det;
    v.det_rhs = in.delta00_II / (5.0 * (1.0 - in.delta00_II));
    v.det_condition = v.det_lhs > v.det_rhs;
    v.error_lhs = in.delta_error;
    v.error_rhs = 1.0 / 12.0 - in.delta_err_equal / 6.0;
    v.error_condition = v.error_lhs < v.error_rhs;
    v.second_class_forces_nontrivial = v.det_condition && v.error_condition;
    return v;
}

}  // namespace mqc
