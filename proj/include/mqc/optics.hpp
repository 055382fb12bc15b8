#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace mqc {

class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

namespace tol {
inline constexpr double normalization = 1e-12;
inline constexpr double routing_sum = 1e-9;
inline constexpr double bloch_norm = 1e-12;
}  // namespace tol

// Single-photon polarization state as a Bloch vector.
struct QubitState {
    double rx = 0.0;
    double ry = 0.0;
    double rz = 1.0;

    void validate() const;
    static QubitState zero() { return {0, 0, 1}; }
    static QubitState one() { return {0, 0, -1}; }
    static QubitState plus() { return {1, 0, 0}; }
    static QubitState minus() { return {-1, 0, 0}; }
};

// B_0 is the computational basis; B_1 has first vector cos(a)|0> + sin(a)|1>.
// cos2a holds cos^2(a).
struct BasisPair {
    double cos2a = 0.5;

    void validate() const;
    bool degenerate() const { return cos2a == 1.0; }
    // Bloch direction of |psi_{0 beta}> in the x-z plane.
    std::array<double, 2> direction_xz(int beta) const;
};

// eta[i][beta], d[i][beta] for detector D_i while measuring in basis beta.
struct DetectorPair {
    std::array<std::array<double, 2>, 2> eta{};
    std::array<std::array<double, 2>, 2> d{};

    void validate() const;
    static DetectorPair uniform(double eta, double dark = 0.0);
    static DetectorPair basis_independent(double eta0, double eta1, double d0 = 0.0,
                                          double d1 = 0.0);
    double eta_min() const;
    double eta_max() const;
};

struct FixedK {
    int k = 0;
};
struct Coherent {
    double mu = 1.0;
};
using PulseSpec = std::variant<FixedK, Coherent>;

void validate_pulse(const PulseSpec& pulse);
std::string describe_pulse(const PulseSpec& pulse);

// p[c0][c1]
struct EventDistribution {
    std::array<std::array<double, 2>, 2> p{};

    double operator()(int c0, int c1) const { return p[c0][c1]; }
    double sum() const;
    void validate(double tolerance = tol::normalization) const;
};

double overlap_q(const QubitState& state, const BasisPair& bases, int beta);

EventDistribution det_probs_fixed_k(const DetectorPair& det, double q_beta, int beta, int k);
EventDistribution det_probs_coherent(const DetectorPair& det, double q_beta, int beta, double mu);
EventDistribution det_probs(const DetectorPair& det, double q_beta, int beta,
                            const PulseSpec& pulse);

// routing[k0] is the probability that k0 of the k photons reach D_0.
double no_click_prob_general(const DetectorPair& det, const std::vector<double>& routing, int beta,
                             int k);

double qudit_report_prob(double eta, const std::vector<double>& darks, int k);

}  // namespace mqc
