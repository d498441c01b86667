#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "phasekit/phase_density.hpp"
#include "phasekit/states.hpp"

namespace pkcli {

// Parsed state description. `params` holds the named scalars of the chosen
// family; `coeffs` is used only by type "explicit" (entries l, re, im).
struct StateSpec {
    std::string type;
    std::map<std::string, double> params;
    std::vector<std::tuple<std::int64_t, double, double>> coeffs;
};

// A constructed state: always a phase density; mode coefficients whenever the
// family lives in the mode picture (everything except "two_peak").
struct BuiltState {
    phasekit::PhaseDensity density;
    std::optional<phasekit::ModeExpansion> modes;
    std::string label;
};

// Parses the JSON text of a state spec. Accepted shape:
//   {"type": "...", "params": {...}, "coeffs": [[l, re, im], ...]}
// Exactly the fields required by the type must be present; anything else is
// rejected with a diagnostic naming the offending field.
StateSpec parse_state_spec(const std::string& json_text);

StateSpec load_state_spec_file(const std::string& path);

// Builds the state, truncating infinite families at tail_tol.
BuiltState build_state(const StateSpec& spec, double tail_tol);

} // namespace pkcli
