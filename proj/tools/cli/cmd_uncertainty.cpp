#include <cmath>

#include "commands.hpp"
#include "phasekit/phase_stats.hpp"

namespace pkcli {

int cmd_uncertainty(const StateSpec& spec, const RunConfig& cfg) {
    const BuiltState st = build_state(spec, cfg.tail_tol);

    const phasekit::UncertaintyResult u =
        st.modes ? phasekit::phase_uncertainty(*st.modes, cfg.grid_n)
                 : phasekit::phase_uncertainty(st.density, cfg.grid_n);

    std::vector<std::string> cols = {"state",        "alpha0",   "delta_theta",
                                     "variance",     "edge_density", "n_extrema"};
    if (cfg.oracle) {
        cols.push_back("oracle_variance");
        cols.push_back("oracle_abs_discrepancy");
    }
    Table t(cols);

    std::vector<Cell> row = {cell_str(st.label),     cell_num(u.alpha0),
                             cell_num(u.delta_theta), cell_num(u.variance),
                             cell_num(u.edge_density_at_min),
                             cell_uint(u.n_extrema_found)};
    if (cfg.oracle) {
        const std::size_t n = std::max<std::size_t>(4096, cfg.grid_n);
        const phasekit::UncertaintyResult o = st.modes
                                                  ? phasekit::grid_oracle(*st.modes, n, n)
                                                  : phasekit::grid_oracle(st.density, n, n);
        row.push_back(cell_num(o.variance));
        row.push_back(cell_num(std::abs(o.variance - u.variance)));
    }
    t.add_row(std::move(row));

    emit_table(t, cfg.format, cfg.out);
    return 0;
}

} // namespace pkcli
