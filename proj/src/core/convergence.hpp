#ifndef BSC_CORE_CONVERGENCE_HPP
#define BSC_CORE_CONVERGENCE_HPP

#include "spectrum.hpp"

#include <optional>
#include <vector>

namespace bsc::convergence {

struct SweepRecord {
    double eps = 0.0;
    double hs_distance = 0.0;
    double hs_norm_sq_smeared = 0.0;
    double young_bound = 0.0;
    std::optional<double> level_odd;   // Klaus experiment only
    std::optional<double> level_even;
};

// Grid adapted to the eps boundary layer: panels graded down to sqrt(eps)/4,
// n_nodes = max(base, 20/sqrt(eps)) capped at 2000.
GridConfig sweep_grid_config(double eps, const GridConfig& base);

// sqrt of the on-grid quadrature of [K_eps - K_exact]^2 over the half-line
// quadrant (difference first, then quadrature). Zero for the exact family.
double hs_distance(const PotentialFamily& family, const Coupling& coupling,
                   const EnergyParam& energy, const GridConfig& grid);

// One record per eps; enforces strictly decreasing distance, increasing
// smeared HS norm and the strict Young bound.
std::vector<SweepRecord> sweep(const PotentialFamily& family_kind,
                               const std::vector<double>& eps_list,
                               const Coupling& coupling, const EnergyParam& energy,
                               const GridConfig& grid);

// Relative Frobenius residual of
//   [free Green matrix] - [Dirichlet Green matrix] - (1/(2s)) g g^T
// on a mirrored grid; throws when it exceeds 1e-12 (fault_injection adds the
// given amount to one free-matrix entry as a self-test of the detector).
double rank_one_check(const EnergyParam& energy, const GridConfig& grid,
                      double fault_injection = 0.0);

// Ground level of each parity sector of the free-line problem per eps.
// Missing bound states are recorded as absent; the even-sector level must be
// strictly decreasing across the sweep.
std::vector<SweepRecord> klaus_experiment(const PotentialFamily& family_kind,
                                          const Coupling& coupling,
                                          const std::vector<double>& eps_list,
                                          const GridConfig& grid);

} // namespace bsc::convergence

#endif
