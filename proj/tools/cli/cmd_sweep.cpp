#include <string>
#include <vector>

#include "commands.hpp"
#include "parallel.hpp"

#include "phasekit/errors.hpp"
#include "phasekit/phase_stats.hpp"
#include "phasekit/relations.hpp"

namespace pkcli {

namespace {

struct SweepRow {
    phasekit::UncertaintyResult u;
    bool has_relation = false;
    double dl = 0.0;
    phasekit::RelationReport rel;
};

} // namespace

int cmd_sweep(const StateSpec& templ, const std::string& param,
              const std::vector<double>& values, const std::string& plot_path,
              const RunConfig& cfg) {
    using namespace phasekit;

    if (templ.params.find(param) == templ.params.end())
        throw InvalidInput("sweep parameter '" + param + "' is not a parameter of state type '" +
                           templ.type + "'");
    if (values.empty()) throw InvalidInput("sweep needs at least one value");

    std::vector<SweepRow> rows(values.size());
    parallel_for(values.size(), [&](std::size_t i) {
        StateSpec spec = templ;
        spec.params[param] = values[i];
        const BuiltState built = build_state(spec, cfg.tail_tol);
        SweepRow row;
        row.u = phase_uncertainty(built.density, cfg.grid_n);
        if (built.modes) {
            row.has_relation = true;
            row.dl = momentum_stats(*built.modes).std_dev;
            row.rel = check_relation_at(*built.modes, row.u.alpha0);
        }
        rows[i] = row;
    });

    Table t({"param", "value", "alpha0", "delta_theta", "variance", "edge_density",
             "n_extrema", "dl", "lhs", "rhs", "margin", "satisfied"});
    for (std::size_t i = 0; i < values.size(); ++i) {
        const SweepRow& r = rows[i];
        std::vector<Cell> cells{cell_str(param),       cell_num(values[i]),
                                cell_num(r.u.alpha0),  cell_num(r.u.delta_theta),
                                cell_num(r.u.variance), cell_num(r.u.edge_density_at_min),
                                cell_uint(r.u.n_extrema_found)};
        if (r.has_relation) {
            cells.push_back(cell_num(r.dl));
            cells.push_back(cell_num(r.rel.lhs));
            cells.push_back(cell_num(r.rel.rhs));
            cells.push_back(cell_num(r.rel.margin));
            cells.push_back(cell_bool(r.rel.satisfied));
        } else {
            for (int k = 0; k < 5; ++k) cells.push_back(cell_null());
        }
        t.add_row(std::move(cells));
    }
    emit_table(t, cfg.format, cfg.out);

    if (!plot_path.empty()) {
        Table p({param, "delta_theta", "variance", "margin"});
        for (std::size_t i = 0; i < values.size(); ++i) {
            const SweepRow& r = rows[i];
            p.add_row({cell_num(values[i]), cell_num(r.u.delta_theta), cell_num(r.u.variance),
                       r.has_relation ? cell_num(r.rel.margin) : cell_null()});
        }
        write_text_file(plot_path, p.render(OutFormat::csv));
    }
    return 0;
}

} // namespace pkcli
