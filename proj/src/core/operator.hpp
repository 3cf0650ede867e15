#ifndef BSC_CORE_OPERATOR_HPP
#define BSC_CORE_OPERATOR_HPP

#include "grid.hpp"
#include "types.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace bsc::op {

// Dense symmetric matrix, row-major.
class SymMatrix {
public:
    SymMatrix() = default;
    explicit SymMatrix(std::size_t n) : n_(n), a_(n * n, 0.0) {}

    std::size_t size() const { return n_; }
    double& at(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
    double at(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }
    double* row(std::size_t i) { return a_.data() + i * n_; }
    const double* row(std::size_t i) const { return a_.data() + i * n_; }
    const std::vector<double>& data() const { return a_; }
    std::vector<double>& data() { return a_; }

    double frobenius() const;
    double max_asymmetry() const;
    void matvec(const double* x, double* y) const;

private:
    std::size_t n_ = 0;
    std::vector<double> a_;
};

enum class Parity { even, odd };

struct SpectralResult {
    std::vector<double> eigenvalues;                 // descending
    double hs_norm_sq = 0.0;                         // sum of squares
    double det2 = 1.0;                               // prod (1-mu) e^mu
    std::optional<SymMatrix> eigenvectors;           // columns, same order
    std::vector<std::optional<Parity>> parity;       // per eigenvector, when known
};

// Nystrom discretization of a kernel on a grid. The matrix is
// sqrt(w_i) k(x_i, x_j) sqrt(w_j) with the kernel's |x-y| kink compensated on
// the diagonal, so eigenvalues converge at higher order than the plain rule.
struct DiscretizedOperator {
    SymMatrix matrix;
    KernelSpec spec;
    std::vector<double> x;        // nodes (signed for mirrored line grids)
    std::vector<double> weights;
    double x_max = 0.0;
};

// Half-line assembly (also used per parity sector). line_dirichlet assembles
// the mirrored 2n grid with its two decoupled blocks.
DiscretizedOperator assemble(const KernelSpec& spec, const Grid& grid);

// Frobenius norm squared of the plain tensor rule, i.e. the on-grid
// sum_ij w_i w_j k(x_i,x_j)^2 (equals sum of squared matrix eigenvalues).
double frobenius_hs_sq(const DiscretizedOperator& op);

// Tail-convergent Hilbert-Schmidt norm squared: integrates k(x, x+t)^2 over
// the half-plane t >= 0 (doubled), with the outer x-integral split at
// L = grid-factor / sqrt|E| and compactified to infinity by x = L / rho^2.
// Line domains are reduced by quadrant/parity decomposition.
double hs_norm_sq_numeric(const KernelSpec& spec, const GridConfig& config);

// Discrete trace sum w_i k(x_i, x_i) of a half-line kernel on [0, X_max].
double diag_trace(const KernelSpec& spec, const Grid& grid);

struct EigOptions {
    double tol = 1e-12;         // off-diagonal Frobenius target, relative
    int max_sweeps = 100;
    bool vectors = false;
};

// Cyclic Jacobi on a dense symmetric matrix; descending eigenvalues.
SpectralResult eig_sym(const SymMatrix& m, const EigOptions& opts = {});
SpectralResult eig_sym(const DiscretizedOperator& op, const EigOptions& opts = {});

// Top k eigenvalues by deterministic block subspace iteration (PSD matrices).
// A cache carries the converged basis into the next call on a nearby matrix
// (energy-continuation in the root finder), cutting the iteration count.
struct SubspaceCache {
    std::vector<std::vector<double>> basis;
};
std::vector<double> top_eigenvalues(const SymMatrix& m, int k, double tol = 1e-12,
                                    SubspaceCache* cache = nullptr);

// Modified determinant prod_i (1 - mu_i) e^{mu_i}, accumulated in log space.
double det2(const std::vector<double>& eigenvalues);

// sqrt(G) V sqrt(G) on the grid: isospectral partner of assemble()'s
// sqrt(V) G sqrt(V). G's spectral square root must be real; eigenvalues of G
// below -tol * max signal numerical failure, small negatives are clamped.
DiscretizedOperator sandwiched_R(const KernelSpec& spec, const Grid& grid);

// Plain-text row-major dump: one-line header "n <nodes> xmax <value>".
void dump_matrix(const DiscretizedOperator& op, const std::string& path);

} // namespace bsc::op

#endif
