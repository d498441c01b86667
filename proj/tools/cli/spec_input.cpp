#include "spec_input.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "phasekit/errors.hpp"

namespace pkcli {

namespace {

using phasekit::InvalidInput;
using nlohmann::json;

double require_number(const json& j, const std::string& field) {
    if (!j.is_number()) throw InvalidInput("state spec: parameter '" + field + "' must be a number");
    return j.get<double>();
}

std::int64_t require_integer(double v, const std::string& field) {
    if (!std::isfinite(v) || v != std::floor(v) || std::abs(v) > 9e15)
        throw InvalidInput("state spec: parameter '" + field + "' must be an integer");
    return std::int64_t(v);
}

const std::map<std::string, std::vector<std::string>>& family_params() {
    static const std::map<std::string, std::vector<std::string>> table = {
        {"number", {"l"}},
        {"wavepacket", {"epsilon", "beta"}},
        {"two_mode", {"l", "L", "gamma", "beta"}},
        {"coherent_phase", {"zeta_abs", "zeta_arg"}},
        {"coherent", {"r", "beta"}},
        {"two_peak", {"delta"}},
        {"explicit", {}},
    };
    return table;
}

} // namespace

StateSpec parse_state_spec(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception& e) {
        throw InvalidInput(std::string("state spec: JSON parse failed: ") + e.what());
    }
    if (!j.is_object()) throw InvalidInput("state spec: top level must be an object");

    for (const auto& [key, _] : j.items()) {
        if (key != "type" && key != "params" && key != "coeffs")
            throw InvalidInput("state spec: unknown field '" + key + "'");
    }
    if (!j.contains("type") || !j["type"].is_string())
        throw InvalidInput("state spec: field 'type' (string) is required");

    StateSpec spec;
    spec.type = j["type"].get<std::string>();

    const auto& families = family_params();
    const auto fam = families.find(spec.type);
    if (fam == families.end()) {
        std::string known;
        for (const auto& [name, _] : families) known += (known.empty() ? "" : ", ") + name;
        throw InvalidInput("state spec: unknown type '" + spec.type + "' (expected one of " +
                           known + ")");
    }

    if (j.contains("params")) {
        if (!j["params"].is_object())
            throw InvalidInput("state spec: field 'params' must be an object");
        for (const auto& [key, val] : j["params"].items())
            spec.params[key] = require_number(val, key);
    }

    const std::set<std::string> required(fam->second.begin(), fam->second.end());
    for (const auto& name : required)
        if (!spec.params.count(name))
            throw InvalidInput("state spec: type '" + spec.type + "' requires parameter '" +
                               name + "'");
    for (const auto& [name, _] : spec.params)
        if (!required.count(name))
            throw InvalidInput("state spec: parameter '" + name + "' is not accepted by type '" +
                               spec.type + "'");

    if (spec.type == "explicit") {
        if (!j.contains("coeffs") || !j["coeffs"].is_array() || j["coeffs"].empty())
            throw InvalidInput("state spec: type 'explicit' requires a nonempty 'coeffs' array");
        for (const auto& entry : j["coeffs"]) {
            if (!entry.is_array() || entry.size() != 3)
                throw InvalidInput("state spec: each coeffs entry must be [l, re, im]");
            const std::int64_t l = require_integer(require_number(entry[0], "coeffs.l"), "coeffs.l");
            spec.coeffs.emplace_back(l, require_number(entry[1], "coeffs.re"),
                                     require_number(entry[2], "coeffs.im"));
        }
    } else if (j.contains("coeffs")) {
        throw InvalidInput("state spec: field 'coeffs' is only accepted by type 'explicit'");
    }

    return spec;
}

StateSpec load_state_spec_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw InvalidInput("cannot open state spec file: " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse_state_spec(ss.str());
}

BuiltState build_state(const StateSpec& spec, double tail_tol) {
    using namespace phasekit;
    auto p = [&](const char* name) { return spec.params.at(name); };

    if (spec.type == "two_peak") {
        PhaseDensity d = make_two_peak_density(p("delta"));
        return {std::move(d), std::nullopt, "two_peak"};
    }

    ModeExpansion state;
    if (spec.type == "number") {
        state = make_number_state(require_integer(p("l"), "l"));
    } else if (spec.type == "wavepacket") {
        state = make_rotor_wavepacket(p("epsilon"), p("beta"), tail_tol);
    } else if (spec.type == "two_mode") {
        state = make_two_mode_superposition(require_integer(p("l"), "l"),
                                            require_integer(p("L"), "L"), p("gamma"), p("beta"));
    } else if (spec.type == "coherent_phase") {
        state = make_coherent_phase_state(p("zeta_abs"), p("zeta_arg"), tail_tol);
    } else if (spec.type == "coherent") {
        state = make_coherent_state(p("r"), p("beta"), tail_tol);
    } else if (spec.type == "explicit") {
        std::int64_t lo = std::get<0>(spec.coeffs.front());
        std::int64_t hi = lo;
        for (const auto& [l, re, im] : spec.coeffs) {
            lo = std::min(lo, l);
            hi = std::max(hi, l);
        }
        if (hi - lo + 1 > std::int64_t(mode_cap))
            throw ResourceLimit("state spec: explicit mode range exceeds the mode cap");
        std::vector<cplx> c(std::size_t(hi - lo + 1), cplx{0.0, 0.0});
        std::vector<bool> seen(c.size(), false);
        for (const auto& [l, re, im] : spec.coeffs) {
            const std::size_t k = std::size_t(l - lo);
            if (seen[k])
                throw InvalidInput("state spec: duplicate coeffs entry for l=" + std::to_string(l));
            seen[k] = true;
            c[k] = {re, im};
        }
        state = ModeExpansion(lo, std::move(c));
        const double norm = state.norm();
        if (std::abs(norm - 1.0) > 1e-6)
            throw InvalidInput("state spec: explicit coeffs have norm " + std::to_string(norm) +
                               "; must be within 1e-6 of 1 before auto-renormalization");
        state.renormalize();
    } else {
        throw InvalidInput("state spec: unknown type '" + spec.type + "'");
    }

    PhaseDensity d = PhaseDensity::from_state(state);
    return {std::move(d), std::move(state), spec.type};
}

} // namespace pkcli
