#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "mqc/montecarlo.hpp"
#include "mqc/optics.hpp"
#include "mqc/reporting.hpp"
#include "mqc/setup_two.hpp"

namespace mqc::cli {

class ScenarioError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// {"S": [[[S000, S001], [S010, S011]], [[S100, S101], [S110, S111]]]}, axes c0, c1, beta.
nlohmann::json strategy_to_json(const ReportingStrategy& s);
ReportingStrategy strategy_from_json(const nlohmann::json& j);

struct SweepSpec {
    std::string param = "mu";  // "mu" or "k"
    double from = 0.0;
    double to = 30.0;
    int steps = 31;

    std::vector<double> values() const;
};

struct DishonestPulse {
    std::uint64_t label = 0;
    PulseSpec source = FixedK{1};
    QubitState state{};
};

struct Scenario {
    std::string setup = "I";
    DetectorPair det = DetectorPair::uniform(0.12);
    BasisPair bases{};
    DetectorQuad quad = DetectorQuad::uniform(0.1, 0.0);
    PulseSpec source = Coherent{1.0};
    ReportingStrategy strategy = make_strategy_I();
    std::string schedule = "fixed";  // "fixed" or "bb84"
    QubitState state{};
    BasisPolicy basis = BasisPolicy::Random;
    std::vector<DishonestPulse> dishonest;
    SweepSpec sweep;
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> pulses;
    std::optional<unsigned> workers;

    // Top-level sections present in the source document.
    std::vector<std::string> sections;
    bool has(const std::string& section) const;
};

Scenario parse_scenario(const nlohmann::json& j);
Scenario load_scenario(const std::string& path);

// Shortest round-trip decimal form; always '.' as decimal separator.
std::string format_number(double v);

class CsvWriter {
public:
    CsvWriter(std::ostream& out, const std::vector<std::string>& header);
    void row(const std::vector<std::string>& cells);
    void row(const std::vector<double>& cells);

private:
    std::ostream& out_;
    std::size_t width_;
};

QubitState parse_state(const std::string& text);

// Runs the command line; returns the process exit code (0 iff no precondition or schema
// violation).
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
// `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mqc::cli
