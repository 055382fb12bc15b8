#pragma once

#include <array>

#include "mqc/optics.hpp"

namespace mqc {

enum QuadDetector { D0 = 0, D1 = 1, DPlus = 2, DMinus = 3 };

// Four detectors behind a 50:50 beam splitter; D0/D1 measure B_0, D+/D- measure B_1.
// theta is the angle of the B_1 axis from x towards z on the Bloch sphere.
struct DetectorQuad {
    std::array<double, 4> eta{};
    std::array<double, 4> d{};
    double theta = 0.0;

    void validate() const;
    static DetectorQuad uniform(double eta, double dark, double theta = 0.0);
};

struct QuadReport {
    std::array<double, 2> p_report{};
};

struct SingleClicks {
    std::array<double, 4> p{};  // indexed by QuadDetector
};

// Projection probabilities q_0 (onto |0>) and q_+ (onto the first B_1 vector).
std::array<double, 2> quad_q(const QubitState& state, double theta);

// Full 16-outcome distribution for a product state; index bit i set iff detector i clicks.
std::array<double, 16> quad_event_probs(const DetectorQuad& quad, const QubitState& state, int k);

SingleClicks single_click_probs(const DetectorQuad& quad, const QubitState& state, int k);

std::array<double, 4> slii_strategy(const std::array<double, 4>& freqs_or_etas);

QuadReport slii_report_probs(const DetectorQuad& quad, const std::array<double, 4>& s,
                             const QubitState& state, int k);

double mpaii_guess(const DetectorQuad& quad, int k);

// Pair-click reporting: report B_0 when some of D0/D1 clicks and neither of D+/D- does, and
// symmetrically for B_1.
QuadReport rsdcii_report_probs(const DetectorQuad& quad, int k);
QuadReport rsdcii_report_probs_general(const DetectorQuad& quad, const QubitState& state, int k);

double attack2_setup2_guess(double a_dark, double eta0, double etaplus, int k);

double slii_single_photon_gap(double delta, int k);

}  // namespace mqc
