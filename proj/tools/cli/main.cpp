#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "commands.hpp"
#include "phasekit/errors.hpp"

namespace {

pkcli::StateSpec spec_from_flags(const std::string& spec_path, const std::string& inline_json) {
    if (!spec_path.empty() && !inline_json.empty())
        throw phasekit::InvalidInput("pass either --spec or --json, not both");
    if (!spec_path.empty()) return pkcli::load_state_spec_file(spec_path);
    if (!inline_json.empty()) return pkcli::parse_state_spec(inline_json);
    throw phasekit::InvalidInput("a state is required: pass --spec FILE or --json TEXT");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"phasekit: windowed phase statistics for periodic quantum states"};
    app.require_subcommand(1);
    app.fallthrough();

    std::size_t grid_n = 512, quad_n = 8192;
    double tail_tol = 1e-10, tol = 1e-9;
    std::uint64_t seed = 42;
    std::string format = "csv", out;
    bool oracle = false;

    app.add_option("--grid-n", grid_n, "window-origin grid size for extremum search")
        ->capture_default_str();
    app.add_option("--quad-n", quad_n, "quadrature panel count")->capture_default_str();
    app.add_option("--tail-tol", tail_tol, "truncation tail mass for infinite families")
        ->capture_default_str();
    app.add_option("--tol", tol, "extremum classification tolerance")->capture_default_str();
    app.add_option("--seed", seed, "master seed for random-state suites")->capture_default_str();
    app.add_option("--format", format, "output format: csv or jsonl")->capture_default_str();
    app.add_option("--out", out, "output path (default: stdout)");
    app.add_flag("--oracle", oracle, "add an independent grid-oracle column");

    std::string spec_path, inline_json;

    auto* c_state = app.add_subcommand("state", "write mode table and sampled density");
    c_state->add_option("--spec", spec_path, "state spec JSON file");
    c_state->add_option("--json", inline_json, "state spec JSON text");

    auto* c_unc = app.add_subcommand("uncertainty", "window-minimized phase uncertainty");
    c_unc->add_option("--spec", spec_path, "state spec JSON file");
    c_unc->add_option("--json", inline_json, "state spec JSON text");

    auto* c_verify = app.add_subcommand("verify", "run a property suite");
    std::string suite;
    c_verify->add_option("suite", suite, "relations | identities | bases | all")->required();

    auto* c_repro = app.add_subcommand("repro", "reproduce the worked-example table");

    auto* c_sweep = app.add_subcommand("sweep", "sweep one parameter of a state template");
    std::string sweep_param, sweep_values, plot_path;
    c_sweep->add_option("--spec", spec_path, "state template JSON file");
    c_sweep->add_option("--json", inline_json, "state template JSON text");
    c_sweep->add_option("--param", sweep_param, "parameter to sweep")->required();
    c_sweep->add_option("--values", sweep_values, "comma-separated parameter values")->required();
    c_sweep->add_option("--plot", plot_path, "also write a plot-data CSV file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help / --version
        app.exit(e);
        return 2;
    }

    pkcli::RunConfig cfg;
    cfg.grid_n = grid_n;
    cfg.quad_n = quad_n;
    cfg.tail_tol = tail_tol;
    cfg.tol = tol;
    cfg.seed = seed;
    cfg.out = out;
    cfg.oracle = oracle;

    try {
        cfg.format = pkcli::parse_format(format);

        if (c_state->parsed())
            return pkcli::cmd_state(spec_from_flags(spec_path, inline_json), cfg);
        if (c_unc->parsed())
            return pkcli::cmd_uncertainty(spec_from_flags(spec_path, inline_json), cfg);
        if (c_verify->parsed()) return pkcli::cmd_verify(suite, cfg);
        if (c_repro->parsed()) return pkcli::cmd_repro(cfg);
        if (c_sweep->parsed()) {
            std::vector<double> values;
            std::size_t pos = 0;
            while (pos <= sweep_values.size()) {
                const std::size_t comma = sweep_values.find(',', pos);
                const std::string tok =
                    sweep_values.substr(pos, comma == std::string::npos ? comma : comma - pos);
                if (tok.empty())
                    throw phasekit::InvalidInput("--values: empty entry in the value list");
                std::size_t used = 0;
                double v = 0.0;
                try {
                    v = std::stod(tok, &used);
                } catch (const std::exception&) {
                    throw phasekit::InvalidInput("--values: '" + tok + "' is not a number");
                }
                if (used != tok.size())
                    throw phasekit::InvalidInput("--values: '" + tok + "' is not a number");
                values.push_back(v);
                if (comma == std::string::npos) break;
                pos = comma + 1;
            }
            return pkcli::cmd_sweep(spec_from_flags(spec_path, inline_json), sweep_param, values,
                                    plot_path, cfg);
        }
        return 2;
    } catch (const phasekit::InvalidInput& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const phasekit::UnsupportedInput& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const phasekit::DegenerateProjection& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const phasekit::ResourceLimit& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const phasekit::ResolutionError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const phasekit::ConvergenceError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
}
