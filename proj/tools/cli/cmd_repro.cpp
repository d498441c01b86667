#include <cmath>
#include <iostream>
#include <numbers>

#include "commands.hpp"

#include "phasekit/phase_stats.hpp"
#include "phasekit/relations.hpp"
#include "phasekit/states.hpp"

namespace pkcli {

namespace {

constexpr double pi = std::numbers::pi;

struct ReproRow {
    std::string example_id;
    std::string quantity;
    double target = 0.0;     // reference value or asymptote (or bound)
    double computed = 0.0;
    double error = 0.0;      // abs or rel per row; one-sided rows use max(0, violation)
    double tolerance = 0.0;
};

ReproRow abs_row(std::string id, std::string q, double target, double computed, double tol) {
    return {std::move(id), std::move(q), target, computed, std::abs(computed - target), tol};
}

ReproRow rel_row(std::string id, std::string q, double target, double computed, double tol) {
    return {std::move(id),
            std::move(q),
            target,
            computed,
            std::abs(computed - target) / std::abs(target),
            tol};
}

// computed must stay at or below the bound; error is the overshoot
ReproRow below_row(std::string id, std::string q, double bound, double computed) {
    return {std::move(id), std::move(q), bound, computed, std::max(0.0, computed - bound), 0.0};
}

// computed must stay at or above the bound
ReproRow above_row(std::string id, std::string q, double bound, double computed) {
    return {std::move(id), std::move(q), bound, computed, std::max(0.0, bound - computed), 0.0};
}

} // namespace

int cmd_repro(const RunConfig& cfg) {
    using namespace phasekit;
    std::vector<ReproRow> rows;

    {
        const auto u = phase_uncertainty(make_number_state(0), cfg.grid_n);
        rows.push_back(abs_row("uniform", "delta_theta", pi / std::sqrt(3.0), u.delta_theta,
                               1e-9));
    }

    for (double delta : {pi / 4.0, pi / 2.0, pi}) {
        const auto u = phase_uncertainty(make_two_peak_density(delta), cfg.grid_n);
        const double want = pi * pi / 4.0 + delta * delta / 12.0;
        rows.push_back(abs_row("two_peak delta=" + g17(delta), "variance", want, u.variance,
                               1e-8));
        if (delta == pi)
            rows.push_back(abs_row("two_peak delta=pi", "variance_vs_uniform_max",
                                   pi * pi / 3.0, u.variance, 1e-8));
    }

    {
        const double eps = 1e-3, beta = 0.3;
        const auto psi = make_rotor_wavepacket(eps, beta, 1e-12);
        const auto u = phase_uncertainty(psi, cfg.grid_n);
        const auto mom = momentum_stats(psi);
        rows.push_back(rel_row("wavepacket eps=1e-3", "delta_theta_over_eps", 1.0,
                               u.delta_theta / eps, 0.01));
        rows.push_back(abs_row("wavepacket eps=1e-3", "delta_l_times_2sinh_over_sqrt2", 1.0,
                               mom.std_dev * (std::exp(eps) - std::exp(-eps)) / std::sqrt(2.0),
                               1e-9));
        rows.push_back(rel_row("wavepacket eps=1e-3", "uncertainty_product",
                               1.0 / std::sqrt(2.0), mom.std_dev * u.delta_theta, 0.05));
        rows.push_back(below_row("wavepacket eps=1e-3", "edge_density_at_min", 1e-4,
                                 u.edge_density_at_min));
    }

    {
        const auto psi = make_two_mode_superposition(0, 1, pi / 4.0, 0.3);
        const auto extrema = find_extrema(psi, cfg.grid_n);
        double worst = 0.0;
        for (const auto& e : extrema) worst = std::max(worst, std::abs(std::sin(-e.alpha + 0.3)));
        rows.push_back(below_row("two_mode (0,1,pi/4,0.3)", "extremum_condition_residual",
                                 1e-10, worst));
        const auto u = phase_uncertainty(psi, cfg.grid_n);
        rows.push_back(abs_row("two_mode (0,1,pi/4,0.3)", "min_variance",
                               pi * pi / 3.0 - 2.0, u.variance, 1e-8));
        const auto rel = check_relation_at(psi, u.alpha0);
        rows.push_back(above_row("two_mode (0,1,pi/4,0.3)", "relation_margin", 0.0, rel.margin));
    }

    {
        const double eps = 1e-4;
        const auto psi = make_coherent_phase_state(std::exp(-eps), 0.0, 1e-9);
        const auto u = phase_uncertainty(psi, cfg.grid_n);
        rows.push_back(rel_row("coherent_phase eps=1e-4", "variance_over_eps",
                               4.0 * std::log(2.0), u.variance / eps, 0.02));
    }
    {
        const double eps = 1e-3;
        const auto psi = make_coherent_phase_state(std::exp(-eps), 0.0, 1e-12);
        const auto mom = momentum_stats(psi);
        rows.push_back(rel_row("coherent_phase eps=1e-3", "delta_n_times_2eps", 1.0,
                               mom.std_dev * 2.0 * eps, 1e-3));
    }

    {
        std::vector<double> margins;
        for (double r : {1.0, 2.0, 4.0, 8.0}) {
            const auto psi = make_coherent_state(r, 0.0, 1e-12);
            const auto mom = momentum_stats(psi);
            rows.push_back(abs_row("coherent r=" + g17(r), "delta_n", r, mom.std_dev, 1e-6));
            const auto rel = check_relation_min(psi, cfg.grid_n);
            rows.push_back(above_row("coherent r=" + g17(r), "relation_margin", 0.0,
                                     rel.margin));
            margins.push_back(rel.margin);
        }
        double worst_increase = 0.0;
        for (std::size_t i = 1; i < margins.size(); ++i)
            worst_increase = std::max(worst_increase, margins[i] - margins[i - 1]);
        rows.push_back(below_row("coherent r in {1,2,4,8}", "margin_consecutive_increase",
                                 0.0, worst_increase));
    }

    Table t({"example_id", "quantity", "paper_value_or_asymptote", "computed_value",
             "abs_or_rel_error", "tolerance", "pass"});
    std::size_t failures = 0;
    for (const auto& r : rows) {
        const bool pass = r.error <= r.tolerance;
        if (!pass) ++failures;
        t.add_row({cell_str(r.example_id), cell_str(r.quantity), cell_num(r.target),
                   cell_num(r.computed), cell_num(r.error), cell_num(r.tolerance),
                   cell_bool(pass)});
    }

    emit_table(t, cfg.format, cfg.out);
    std::cerr << "repro: " << (rows.size() - failures) << "/" << rows.size()
              << " rows passed\n";
    return failures == 0 ? 0 : 1;
}

} // namespace pkcli
