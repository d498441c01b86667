#include <cmath>
#include <iostream>
#include <numbers>

#include "commands.hpp"
#include "phasekit/states.hpp"

namespace pkcli {

int cmd_state(const StateSpec& spec, const RunConfig& cfg) {
    const BuiltState st = build_state(spec, cfg.tail_tol);
    const std::string prefix = cfg.out.empty() ? "phasekit_state" : cfg.out;
    const std::string ext = format_ext(cfg.format);

    std::string written;

    if (st.modes) {
        Table modes({"l", "re", "im", "abs2"});
        const auto& m = *st.modes;
        for (std::size_t k = 0; k < m.size(); ++k) {
            modes.add_row({cell_num(m.mode_value(k)), cell_num(m[k].real()),
                           cell_num(m[k].imag()), cell_num(std::norm(m[k]))});
        }
        const std::string path = prefix + "_modes." + ext;
        write_text_file(path, modes.render(cfg.format));
        written += path;
    }

    Table density({"theta", "rho"});
    const std::size_t n = std::max<std::size_t>(cfg.grid_n, 64);
    for (std::size_t j = 0; j < n; ++j) {
        const double theta = -std::numbers::pi + 2.0 * std::numbers::pi * double(j) / double(n);
        density.add_row({cell_num(theta), cell_num(st.density.value(theta))});
    }
    const std::string dpath = prefix + "_density." + ext;
    write_text_file(dpath, density.render(cfg.format));
    if (!written.empty()) written += " ";
    written += dpath;

    if (st.modes) {
        std::cout << "modes: " << st.modes->size() << "\n";
        std::cout << "norm: " << g17(st.modes->norm()) << "\n";
        std::cout << "tail_bound: " << g17(st.modes->tail_bound()) << "\n";
    } else {
        std::cout << "modes: none (piecewise density)\n";
        std::cout << "norm: " << g17(st.density.total_mass()) << "\n";
        std::cout << "tail_bound: 0\n";
    }
    std::cout << "wrote: " << written << "\n";
    return 0;
}

} // namespace pkcli
