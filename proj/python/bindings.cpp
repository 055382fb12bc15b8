#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "mqc/attacks.hpp"
#include "mqc/bounds.hpp"
#include "mqc/montecarlo.hpp"
#include "mqc/optics.hpp"
#include "mqc/reporting.hpp"
#include "mqc/setup_two.hpp"
#include "mqc/theorem.hpp"

namespace py = pybind11;
using namespace mqc;

namespace {

using Grid = std::array<std::array<double, 2>, 2>;

PulseSpec pulse_of(std::optional<double> mu, std::optional<int> k) {
    if (mu && k) throw PreconditionError("give either mu or k, not both");
    if (k) return FixedK{*k};
    if (mu) return Coherent{*mu};
    throw PreconditionError("give mu or k");
}

DetectorPair pair_of(double eta0, double eta1, double d0, double d1) {
    return DetectorPair::basis_independent(eta0, eta1, d0, d1);
}

py::dict outcome_dict(const AttackOutcome& o) {
    py::dict d;
    d["guess_prob"] = o.guess_prob;
    d["fail_prob_bound"] = o.fail_prob_bound;
    for (const auto& [key, v] : o.intermediates) d[py::str(key)] = v;
    return d;
}

py::dict bound_dict(const BoundDetail& b) {
    py::dict d;
    d["value"] = b.value;
    d["b_exp"] = b.b_exp;
    d["b_det"] = b.b_det;
    d["vacuous"] = b.vacuous();
    return d;
}

}  // namespace

PYBIND11_MODULE(_mqc, m) {
    m.doc() = "Multiphoton attack and detection-probability calculators";
    py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_ValueError);

    m.def(
        "overlap_q",
        [](std::array<double, 3> bloch, double cos2a, int beta) {
            return overlap_q({bloch[0], bloch[1], bloch[2]}, BasisPair{cos2a}, beta);
        },
        py::arg("bloch"), py::arg("cos2a"), py::arg("beta"));

    m.def(
        "det_probs",
        [](double q, int beta, std::optional<double> mu, std::optional<int> k, double eta0, double eta1, double d0,
           double d1) -> Grid { return det_probs(pair_of(eta0, eta1, d0, d1), q, beta, pulse_of(mu, k)).p; },
        py::arg("q"), py::arg("beta"), py::kw_only(), py::arg("mu") = py::none(), py::arg("k") = py::none(),
        py::arg("eta0") = 0.12, py::arg("eta1") = 0.12, py::arg("d0") = 0.0, py::arg("d1") = 0.0);

    m.def(
        "report_prob",
        [](const std::array<Grid, 2>& s, const Grid& events, int beta) {
            ReportingStrategy st;
            for (int c0 = 0; c0 < 2; ++c0)
                for (int c1 = 0; c1 < 2; ++c1)
                    for (int b = 0; b < 2; ++b) st.S[c0][c1][b] = s[c0][c1][b];
            st.validate();
            EventDistribution ev;
            ev.p = events;
            return report_prob(st, ev, beta);
        },
        py::arg("S"), py::arg("events"), py::arg("beta"));

    m.def("attack1_guess_coherent", &attack1_guess_coherent, py::arg("eta"), py::arg("mu"));
    m.def(
        "attack2_chernoff",
        [](std::uint64_t n, double a, std::array<double, 2> pa, std::array<double, 2> pp) {
            return outcome_dict(attack2_chernoff(n, a, pa, pp));
        },
        py::arg("n"), py::arg("a"), py::arg("p_attack"), py::arg("p_protocol"));
    m.def(
        "double_photon_attack",
        [](double d0, double d1, double eta0, double eta1, double mu, std::uint64_t n) {
            return outcome_dict(double_photon_attack({d0, d1, eta0, eta1, mu, n}));
        },
        py::kw_only(), py::arg("d0") = 1e-5, py::arg("d1") = 1e-5, py::arg("eta0") = 0.12, py::arg("eta1") = 0.08,
        py::arg("mu") = 0.05, py::arg("n") = 20000000);
    m.def("coinflip_attack_success", &coinflip_attack_success, py::arg("s_min"), py::arg("m"));
    m.def("coinflip_failure_term", &coinflip_failure_term, py::arg("s_min"), py::arg("m"));

    m.def(
        "bound_B_II", [](double lo, double up, double delta) { return bound_dict(bound_B_II({lo, up, delta})); },
        py::arg("eta_low"), py::arg("eta_up"), py::arg("delta"));
    m.def(
        "bound_B_III", [](double lo, double up, double delta) { return bound_dict(bound_B_III(lo, up, delta)); },
        py::arg("eta_min"), py::arg("eta_max"), py::arg("delta"));

    m.def(
        "mpaii_guess", [](double eta, double d, int k) { return mpaii_guess(DetectorQuad::uniform(eta, d), k); },
        py::arg("eta"), py::arg("d"), py::arg("k"));
    m.def("attack2_setup2_guess", &attack2_setup2_guess, py::arg("a_dark"), py::arg("eta0"), py::arg("etaplus"),
          py::arg("k"));

    m.def(
        "classify",
        [](double eta0, double eta1, double cos2a) {
            const auto sol = solution_space(build_constraints(eta0, eta1, cos2a));
            const auto cls = classify(sol, eta0, eta1, cos2a);
            py::dict d;
            d["dim"] = sol.dim;
            d["class"] = to_string(cls.tag);
            d["all_ones_angle"] = cls.all_ones_angle;
            d["near_degenerate"] = cls.near_degenerate;
            return d;
        },
        py::arg("eta0"), py::arg("eta1"), py::arg("cos2a"));

    m.def(
        "estimate_event_probs",
        [](double q_bloch_z, int beta, std::optional<double> mu, std::optional<int> k, double eta, double d,
           std::uint64_t pulses, std::uint64_t seed, unsigned workers) {
            SetupOneScenario sc{DetectorPair::uniform(eta, d), BasisPair{}, QubitState{0, 0, q_bloch_z}, pulse_of(mu, k),
                                beta};
            std::array<Estimate, 4> est;
            {
                py::gil_scoped_release release;
                est = estimate_event_probs({seed, pulses, workers}, sc);
            }
            py::list out;
            for (const auto& e : est) out.append(py::make_tuple(e.value, e.std_error));
            return out;
        },
        py::arg("rz"), py::arg("beta"), py::kw_only(), py::arg("mu") = py::none(), py::arg("k") = py::none(),
        py::arg("eta") = 0.12, py::arg("d") = 0.0, py::arg("pulses") = 100000, py::arg("seed") = 1,
        py::arg("workers") = 1);
}
