#ifndef BSC_CORE_SPECTRUM_HPP
#define BSC_CORE_SPECTRUM_HPP

#include "operator.hpp"

#include <optional>
#include <vector>

namespace bsc::spectrum {

// No E < 0 with a unit eigenvalue inside the search bracket.
class no_bound_state : public std::runtime_error {
public:
    explicit no_bound_state(const std::string& what) : std::runtime_error(what) {}
};

struct ProblemSpec {
    Domain domain = Domain::halfline_dirichlet;
    PotentialFamily family{};
    Coupling coupling{1.0};
};

KernelSpec make_kernel_spec(const ProblemSpec& p, const EnergyParam& e);

// Top k_max eigenvalues of the operator at the given energy, descending.
std::vector<double> bs_eigenvalues(const ProblemSpec& problem, const EnergyParam& energy,
                                   const GridConfig& grid, int k_max);

struct LevelRequest {
    ProblemSpec problem;
    int k = 1;                  // level index within a sector / half-line
    GridConfig grid{};
    double root_tol = 1e-10;    // relative on E
    bool use_sandwiched = false; // solve through the isospectral partner
};

struct LevelResult {
    double energy = 0.0;        // negative
    double mu_at_root = 0.0;    // ~1
    double det2_at_root = 0.0;  // ~0
    int iterations = 0;
    int multiplicity = 1;       // 2 for full-line Dirichlet levels
    std::optional<op::Parity> parity;
};

// Bisection (geometric midpoints) on mu_k(B(E)) - 1 over E < 0.
LevelResult solve_level(const LevelRequest& request);

struct CountResult {
    int count = 0;              // #{mu_i >= 1}
    double bound = 0.0;         // counting bound actually used (decoupling-safe)
    double bound_paper = 0.0;   // stated full-line value (same as bound on R+)
};

CountResult count_bound_states(const ProblemSpec& problem, const EnergyParam& energy,
                               const GridConfig& grid);

enum class ParityLabel { even, odd, ambiguous };

// Sector assemblies carry their label; mirrored full-line assemblies classify
// by the mirror overlap of the eigenvector (|overlap| < 0.9 is ambiguous).
ParityLabel parity_of(const op::DiscretizedOperator& op, const std::vector<double>& eigvec);

} // namespace bsc::spectrum

#endif
