#ifndef BSC_CORE_GRID_HPP
#define BSC_CORE_GRID_HPP

#include "types.hpp"

#include <cstddef>
#include <vector>

namespace bsc {

struct GridConfig {
    int n_nodes = 400;
    double truncation_radius_factor = 40.0; // X_max = factor / sqrt(|E|)
    int panels = 8;                         // geometric panels toward u = 0
    bool sqrt_transform = true;             // x = u^2; identity otherwise

    void validate() const {
        if (n_nodes < 8) throw invalid_input("GridConfig: n_nodes must be >= 8");
        if (!(truncation_radius_factor >= 10.0))
            throw invalid_input("GridConfig: truncation_radius_factor must be >= 10");
        if (panels < 1 || panels > n_nodes)
            throw invalid_input("GridConfig: panels must be in [1, n_nodes]");
    }
};

// Quadrature grid in the transformed coordinate u (x = u^2), composite
// Gauss-Legendre on geometrically graded panels with edges sqrt(X_max) 2^{-j}.
// x_weights carry the Jacobian 2u, so sum w_i f(x_i) ~ int_0^{X_max} f dx.
class Grid {
public:
    Grid(const GridConfig& config, const EnergyParam& energy);

    std::size_t size() const { return x_.size(); }
    double x_max() const { return x_max_; }
    const std::vector<double>& x() const { return x_; }
    const std::vector<double>& x_weights() const { return wx_; }
    const std::vector<double>& u() const { return u_; }
    const std::vector<double>& u_weights() const { return wu_; }
    // Quadrature deficiency of the node's own panel for v -> |v - u_i|,
    // used by the kink-compensated assembly.
    const std::vector<double>& kink_deficiency() const { return kink_def_; }
    const GridConfig& config() const { return config_; }

    double integrate(const std::vector<double>& f_at_nodes) const;

private:
    GridConfig config_;
    double x_max_ = 0.0;
    std::vector<double> u_, wu_, x_, wx_, kink_def_;
};

// m-point Gauss-Legendre nodes/weights on [-1, 1].
void gauss_legendre(int m, std::vector<double>& nodes, std::vector<double>& weights);

// Composite rule on [0, hi] with geometric panel edges hi 2^{-j}, j = p-1..0,
// m points per panel. Appends to xs/ws.
void composite_gauss_legendre(double hi, int p, int m,
                              std::vector<double>& xs, std::vector<double>& ws);

} // namespace bsc

#endif
