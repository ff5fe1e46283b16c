#pragma once

#include "isores/gap.hpp"

#include <json.hpp>

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

namespace isores {

using Json = nlohmann::ordered_json;

/// Malformed or inconsistent input; maps to exit code 1.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Scenario {
    IsometricOperator op;
    ParameterFamily family;
    TolerancePolicy tol;

    Complex z0() const { return family.z0(); }
};

/// Bases are checked, never repaired. Family matrices are read in the
/// bases returned by defect_source / defect_target at z0.
Scenario parse_scenario(std::string_view document);
Scenario parse_scenario(std::istream& in);
Scenario load_scenario(const std::string& path);

struct CommandOptions {
    std::optional<Arc> arc;
    std::size_t samples = 9;
    std::optional<Complex> zeta;
    std::optional<std::size_t> grid;  // N angles on the rings |zeta| = 1/2 and |zeta| = 2
    std::uint64_t seed = 0;
};

struct CommandOutput {
    Json report;
    int exit_code = 0;
    std::string csv;  // resolvent --grid only
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 1;
inline constexpr int kExitViolation = 2;

/// Commands: defect, resolvent, gap-scan, verify. Throws InputError for
/// unusable options or inputs; no report is produced in that case.
CommandOutput run_command(const Scenario& scenario, const std::string& command, const CommandOptions& options);

struct PropertyResult {
    std::string name;
    std::string scope;  // "scenario" or "random"
    bool pass = true;
    bool skipped = false;
    double worst = 0.0;
    double tolerance = 0.0;
    std::size_t trials = 0;
};

/// The property suite behind `verify`: checks on the scenario itself plus
/// `random_instances` seeded random draws per randomized property.
std::vector<PropertyResult> run_property_suite(const Scenario& scenario, std::uint64_t seed,
                                               std::size_t random_instances = 12);

Json to_json(Complex z);
Json to_json(const ComplexMatrix& m);
Json to_json(const GapReport& rep);

}  // namespace isores
