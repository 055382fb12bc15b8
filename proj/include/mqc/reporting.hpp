#pragma once

#include <array>

#include "mqc/optics.hpp"

namespace mqc {

// S[c0][c1][beta]: probability that Bob reports m=1 for event (c0,c1) in basis beta.
struct ReportingStrategy {
    std::array<std::array<std::array<double, 2>, 2>, 2> S{};

    double operator()(int c0, int c1, int beta) const { return S[c0][c1][beta]; }
    void validate() const;
    double min_single_click() const;
};

ReportingStrategy make_strategy_I();
ReportingStrategy make_strategy_II();
ReportingStrategy make_strategy_III(const DetectorPair& det, double s11_0, double s11_1);
ReportingStrategy make_trivial(double s);

// freq[c][beta] is the observed frequency of the single click (c, 1-c) in basis beta.
using SingleClickFreqs = std::array<std::array<double, 2>, 2>;
ReportingStrategy make_symmetrized(const SingleClickFreqs& freq);

double report_prob(const ReportingStrategy& strategy, const EventDistribution& events, int beta);

double lemma1_bound(double delta, double s11_max, int k);

struct FeasibilityInputs {
    double delta00_I = 0.0;
    double delta11_I = 0.0;
    double delta_err_equal = 0.0;
    double delta_err_diff = 0.0;
    double delta_error = 0.0;
    double delta00_II = 0.0;
    double delta_det = 0.0;
};

struct FeasibilityVerdict {
    bool first_class_ok = false;
    double first_lhs = 0.0;
    double first_rhs = 0.0;

    bool second_class_forces_nontrivial = false;
    bool det_condition = false;
    double det_lhs = 0.0;
    double det_rhs = 0.0;
    bool error_condition = false;
    double error_lhs = 0.0;
    double error_rhs = 0.0;
};

FeasibilityVerdict trivial_feasibility(const FeasibilityInputs& in);

}  // namespace mqc
