#include "convergence.hpp"

#include "analytic.hpp"
#include "kernels.hpp"

#include <algorithm>
#include <cmath>

namespace bsc::convergence {

GridConfig sweep_grid_config(double eps, const GridConfig& base) {
    GridConfig g = base;
    const double want = 20.0 / std::sqrt(std::max(eps, 1e-12));
    g.n_nodes = std::clamp(static_cast<int>(want), base.n_nodes,
                           std::max(2000, base.n_nodes));
    const double u_max = std::sqrt(g.truncation_radius_factor); // |E|-free estimate
    const int p = static_cast<int>(
        std::ceil(std::log2(u_max / (std::sqrt(std::max(eps, 1e-12)) / 4.0))));
    g.panels = std::clamp(p, base.panels, 24);
    if (g.panels > g.n_nodes) g.panels = g.n_nodes;
    return g;
}

double hs_distance(const PotentialFamily& family, const Coupling& coupling,
                   const EnergyParam& energy, const GridConfig& grid) {
    if (!family.smeared()) return 0.0;
    const Grid g(grid, energy);
    const auto& x = g.x();
    const auto& w = g.x_weights();
    const std::size_t n = x.size();
    const double s = energy.sqrt_abs_e();
    const PotentialFamily exact = PotentialFamily::exact();

    std::vector<double> dsq(n); // sqrt(V_eps) - sqrt(V) per node
    std::vector<double> sq(n);
    for (std::size_t i = 0; i < n; ++i) {
        sq[i] = std::sqrt(kernels::potential(exact, x[i]));
        dsq[i] = std::sqrt(kernels::potential(family, x[i]));
    }
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            const double mn = std::min(x[i], x[j]);
            const double green = std::exp(-s * std::abs(x[i] - x[j])) *
                                 (-std::expm1(-2.0 * s * mn)) / (2.0 * s);
            const double diff =
                coupling.lambda * green * (dsq[i] * dsq[j] - sq[i] * sq[j]);
            acc += (i == j ? 1.0 : 2.0) * w[i] * w[j] * diff * diff;
        }
    }
    return std::sqrt(acc);
}

std::vector<SweepRecord> sweep(const PotentialFamily& family_kind,
                               const std::vector<double>& eps_list,
                               const Coupling& coupling, const EnergyParam& energy,
                               const GridConfig& grid) {
    if (!family_kind.smeared()) throw invalid_input("sweep: smeared family required");
    for (std::size_t i = 1; i < eps_list.size(); ++i)
        if (!(eps_list[i] < eps_list[i - 1]))
            throw invalid_input("sweep: eps_list must be strictly decreasing");

    std::vector<SweepRecord> out;
    for (double eps : eps_list) {
        const auto family = PotentialFamily::make(family_kind.kind, eps);
        const GridConfig cfg = sweep_grid_config(eps, grid);
        SweepRecord r;
        r.eps = eps;
        r.hs_distance = hs_distance(family, coupling, energy, cfg);
        KernelSpec spec;
        spec.domain = Domain::halfline_dirichlet;
        spec.family = family;
        spec.coupling = coupling;
        spec.energy = energy;
        r.hs_norm_sq_smeared = op::hs_norm_sq_numeric(spec, cfg);
        r.young_bound = analytic::smeared_hs_upper_bound(family, energy);
        if (!(r.hs_norm_sq_smeared < r.young_bound))
            throw numerical_failure("sweep: Young bound violated");
        if (!out.empty()) {
            if (!(r.hs_distance < out.back().hs_distance))
                throw numerical_failure("sweep: hs_distance not strictly decreasing");
            if (!(r.hs_norm_sq_smeared > out.back().hs_norm_sq_smeared))
                throw numerical_failure("sweep: smeared HS norm not increasing");
        }
        out.push_back(r);
    }
    return out;
}

double rank_one_check(const EnergyParam& energy, const GridConfig& grid,
                      double fault_injection) {
    const Grid g(grid, energy);
    const auto& hx = g.x();
    const auto& hw = g.x_weights();
    const std::size_t nh = hx.size();
    const std::size_t n = 2 * nh;
    std::vector<double> x(n), w(n);
    for (std::size_t i = 0; i < nh; ++i) {
        x[i] = -hx[nh - 1 - i];
        w[i] = hw[nh - 1 - i];
        x[nh + i] = hx[i];
        w[nh + i] = hw[i];
    }
    const double s = energy.sqrt_abs_e();
    std::vector<double> gvec(n);
    for (std::size_t i = 0; i < n; ++i)
        gvec[i] = std::sqrt(w[i]) * std::exp(-s * std::abs(x[i]));

    double res_sq = 0.0, free_sq = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const double sw = std::sqrt(w[i]) * std::sqrt(w[j]);
            double free_v = sw * kernels::green_free_line(x[i], x[j], energy);
            if (fault_injection != 0.0 && i == 0 && j == std::min<std::size_t>(1, n - 1))
                free_v += fault_injection;
            const double dir_v = sw * kernels::green_dirichlet_line(x[i], x[j], energy);
            const double rank1 = gvec[i] * gvec[j] / (2.0 * s);
            const double r = free_v - dir_v - rank1;
            res_sq += r * r;
            free_sq += free_v * free_v;
        }
    }
    const double rel = std::sqrt(res_sq) / std::sqrt(free_sq);
    if (rel > 1e-12)
        throw numerical_failure("rank_one_check: residual above the rounding bound");
    return rel;
}

std::vector<SweepRecord> klaus_experiment(const PotentialFamily& family_kind,
                                          const Coupling& coupling,
                                          const std::vector<double>& eps_list,
                                          const GridConfig& grid) {
    if (!family_kind.smeared())
        throw invalid_input("klaus_experiment: smeared family required");
    for (std::size_t i = 1; i < eps_list.size(); ++i)
        if (!(eps_list[i] < eps_list[i - 1]))
            throw invalid_input("klaus_experiment: eps_list must be strictly decreasing");

    std::vector<SweepRecord> out;
    for (double eps : eps_list) {
        const auto family = PotentialFamily::make(family_kind.kind, eps);
        GridConfig cfg = sweep_grid_config(eps, grid);
        cfg.n_nodes = std::min(cfg.n_nodes, 600); // eigen solves dominate here
        SweepRecord r;
        r.eps = eps;
        for (auto sector : {Domain::halfline_dirichlet, Domain::halfline_neumann_sector}) {
            spectrum::LevelRequest req;
            req.problem.domain = sector;
            req.problem.family = family;
            req.problem.coupling = coupling;
            req.k = 1;
            req.grid = cfg;
            try {
                const auto level = spectrum::solve_level(req);
                if (sector == Domain::halfline_dirichlet)
                    r.level_odd = level.energy;
                else
                    r.level_even = level.energy;
            } catch (const spectrum::no_bound_state&) {
                // absent at this eps; recorded as such
            }
        }
        if (!out.empty() && out.back().level_even && r.level_even &&
            !(*r.level_even < *out.back().level_even))
            throw numerical_failure("klaus_experiment: even-sector level not decreasing");
        out.push_back(r);
    }
    return out;
}

} // namespace bsc::convergence
