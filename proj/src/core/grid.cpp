#include "grid.hpp"

#include <cmath>
#include <numbers>

namespace bsc {

void gauss_legendre(int m, std::vector<double>& nodes, std::vector<double>& weights) {
    nodes.assign(m, 0.0);
    weights.assign(m, 0.0);
    const int half = (m + 1) / 2;
    for (int i = 0; i < half; ++i) {
        // Chebyshev initial guess, then Newton on P_m.
        double z = std::cos(std::numbers::pi * (i + 0.75) / (m + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < m; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
            }
            pp = m * (z * p0 - p1) / (z * z - 1.0);
            const double dz = p0 / pp;
            z -= dz;
            if (std::abs(dz) < 1e-15) break;
        }
        nodes[i] = -z;
        nodes[m - 1 - i] = z;
        weights[i] = weights[m - 1 - i] = 2.0 / ((1.0 - z * z) * pp * pp);
    }
}

void composite_gauss_legendre(double hi, int p, int m,
                              std::vector<double>& xs, std::vector<double>& ws) {
    std::vector<double> t, w;
    gauss_legendre(m, t, w);
    double b = hi * std::pow(2.0, -(p - 1));
    double a = 0.0;
    for (int j = 0; j < p; ++j) {
        const double c = 0.5 * (a + b), h = 0.5 * (b - a);
        for (int i = 0; i < m; ++i) {
            xs.push_back(c + h * t[i]);
            ws.push_back(h * w[i]);
        }
        a = b;
        b *= 2.0;
    }
}

Grid::Grid(const GridConfig& config, const EnergyParam& energy) : config_(config) {
    config.validate();
    x_max_ = config.truncation_radius_factor / energy.sqrt_abs_e();
    const double u_max = config.sqrt_transform ? std::sqrt(x_max_) : x_max_;

    const int p = config.panels;
    const int base = config.n_nodes / p;
    const int rem = config.n_nodes % p;

    std::vector<double> t, w;
    double b = u_max * std::pow(2.0, -(p - 1));
    double a = 0.0;
    for (int j = 0; j < p; ++j) {
        const int m = base + (j < rem ? 1 : 0);
        gauss_legendre(m, t, w);
        const double c = 0.5 * (a + b), h = 0.5 * (b - a);
        const std::size_t first = u_.size();
        for (int i = 0; i < m; ++i) {
            u_.push_back(c + h * t[i]);
            wu_.push_back(h * w[i]);
        }
        // deficiency of this panel's rule for v -> |v - u_i|, per node i in it
        for (std::size_t i = first; i < u_.size(); ++i) {
            const double ui = u_[i];
            const double ia = ui - a, ib = b - ui;
            double approx = 0.0;
            for (std::size_t k = first; k < u_.size(); ++k)
                approx += wu_[k] * std::abs(u_[k] - ui);
            kink_def_.push_back(0.5 * (ia * ia + ib * ib) - approx);
        }
        a = b;
        b *= 2.0;
    }

    x_.resize(u_.size());
    wx_.resize(u_.size());
    for (std::size_t i = 0; i < u_.size(); ++i) {
        if (config.sqrt_transform) {
            x_[i] = u_[i] * u_[i];
            wx_[i] = wu_[i] * 2.0 * u_[i];
        } else {
            x_[i] = u_[i];
            wx_[i] = wu_[i];
        }
    }
}

double Grid::integrate(const std::vector<double>& f_at_nodes) const {
    if (f_at_nodes.size() != wx_.size())
        throw invalid_input("Grid::integrate: size mismatch");
    double acc = 0.0;
    for (std::size_t i = 0; i < wx_.size(); ++i) acc += wx_[i] * f_at_nodes[i];
    return acc;
}

} // namespace bsc
