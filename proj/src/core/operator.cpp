#include "operator.hpp"

#include "kernels.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>

namespace bsc::op {

namespace {

// Coefficient of the |x-y| part of the kernel at the diagonal point x:
// every Green kernel here carries e^{-s|x-y|}/(2s), whose nonsmooth part is
// -|x-y|/2 at leading order; the potential factors multiply in.
double kink_coefficient(const KernelSpec& spec, double ax) {
    if (spec.variant == KernelVariant::appendix_b) return 0.0; // analytic in u
    return -0.5 * spec.coupling.lambda * kernels::potential(spec.family, ax);
}

void add_kink_compensation(SymMatrix& m, const KernelSpec& spec, const Grid& grid,
                           std::size_t row_offset, bool mirrored_first_block) {
    const auto& x = grid.x();
    const auto& d = grid.kink_deficiency();
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double c = kink_coefficient(spec, x[i]);
        if (c == 0.0) continue;
        std::size_t idx = mirrored_first_block ? row_offset + (x.size() - 1 - i)
                                               : row_offset + i;
        m.at(idx, idx) += 4.0 * x[i] * c * d[i];
    }
}

bool mirrored_domain(const KernelSpec& spec) {
    return spec.domain == Domain::line_dirichlet || spec.domain == Domain::line_free;
}

} // namespace

double SymMatrix::frobenius() const {
    double acc = 0.0;
    for (double v : a_) acc += v * v;
    return std::sqrt(acc);
}

double SymMatrix::max_asymmetry() const {
    double m = 0.0;
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = i + 1; j < n_; ++j)
            m = std::max(m, std::abs(at(i, j) - at(j, i)));
    return m;
}

void SymMatrix::matvec(const double* x, double* y) const {
    for (std::size_t i = 0; i < n_; ++i) {
        const double* r = row(i);
        double acc = 0.0;
        for (std::size_t j = 0; j < n_; ++j) acc += r[j] * x[j];
        y[i] = acc;
    }
}

DiscretizedOperator assemble(const KernelSpec& spec, const Grid& grid) {
    spec.validate();
    if (!spec.assemblable())
        throw invalid_input("assemble: exact family on the free line (or its even "
                            "sector) has no square-integrable kernel");

    DiscretizedOperator out;
    out.spec = spec;
    out.x_max = grid.x_max();

    const auto& gx = grid.x();
    const auto& gw = grid.x_weights();
    const std::size_t n = gx.size();

    if (!mirrored_domain(spec)) {
        out.x = gx;
        out.weights = gw;
    } else {
        out.x.resize(2 * n);
        out.weights.resize(2 * n);
        for (std::size_t i = 0; i < n; ++i) {
            out.x[i] = -gx[n - 1 - i];
            out.weights[i] = gw[n - 1 - i];
            out.x[n + i] = gx[i];
            out.weights[n + i] = gw[i];
        }
    }

    const std::size_t nn = out.x.size();
    out.matrix = SymMatrix(nn);
    std::vector<double> sw(nn);
    for (std::size_t i = 0; i < nn; ++i) sw[i] = std::sqrt(out.weights[i]);
    for (std::size_t i = 0; i < nn; ++i) {
        for (std::size_t j = i; j < nn; ++j) {
            const double k = kernels::kernel_eval(spec, out.x[i], out.x[j]);
            const double v = sw[i] * k * sw[j];
            out.matrix.at(i, j) = v;
            out.matrix.at(j, i) = v;
        }
    }

    if (!mirrored_domain(spec)) {
        add_kink_compensation(out.matrix, spec, grid, 0, false);
    } else {
        add_kink_compensation(out.matrix, spec, grid, 0, true);
        add_kink_compensation(out.matrix, spec, grid, n, false);
    }
    return out;
}

double frobenius_hs_sq(const DiscretizedOperator& op) {
    // Squared Frobenius norm of the assembled matrix: identical to the
    // eigenvalue square sum, and the on-grid realization of the squared-kernel
    // quadrature over the truncated window.
    double acc = 0.0;
    for (double v : op.matrix.data()) acc += v * v;
    return acc;
}

// ---------------------------------------------------------------------------
// Tail-convergent HS quadrature
// ---------------------------------------------------------------------------

namespace {

struct HalfPlaneSpec {
    KernelSpec spec;
    bool appendix = false;
};

// int_0^inf dt k(x, x+t)^2 with panels graded to the local structure scale.
double inner_line_integral(const HalfPlaneSpec& hp, double x, double s, double eps_scale) {
    const double T = hp.appendix ? 12.0 * std::sqrt(x / s) + 30.0 / s : 30.0 / s;
    const double lo = std::max(std::min(x + eps_scale, T) / 4.0, T * 0x1p-46);
    int p = static_cast<int>(std::ceil(std::log2(T / lo)));
    p = std::clamp(p, 8, 48);
    std::vector<double> t, wt;
    composite_gauss_legendre(T, p, 14, t, wt);
    double acc = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        const double k = kernels::kernel_eval(hp.spec, x, x + t[i]);
        acc += wt[i] * k * k;
    }
    return acc;
}

// 2 * int_0^inf dx int_0^inf dt k(x, x+t)^2 over one quadrant, outer split at
// L with the far field mapped by x = L / rho^2.
double hs_quadrant(const HalfPlaneSpec& hp, double L) {
    const double s = hp.spec.energy.sqrt_abs_e();
    const double eps_scale = hp.spec.family.smeared() ? hp.spec.family.eps : 0.0;

    const double su = std::sqrt(L);
    int p_out = 14;
    if (eps_scale > 0.0)
        p_out = std::max(p_out, static_cast<int>(std::ceil(
                             std::log2(su / (std::sqrt(eps_scale) / 8.0)))));
    p_out = std::min(p_out, 40);

    std::vector<double> u, wu;
    composite_gauss_legendre(su, p_out, 16, u, wu);

    double acc = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        const double x = u[i] * u[i];
        acc += wu[i] * 2.0 * u[i] * 2.0 * inner_line_integral(hp, x, s, eps_scale);
    }

    std::vector<double> rho, wr;
    composite_gauss_legendre(1.0, 6, 16, rho, wr);
    for (std::size_t i = 0; i < rho.size(); ++i) {
        const double x = L / (rho[i] * rho[i]);
        const double jac = 2.0 * L / (rho[i] * rho[i] * rho[i]);
        acc += wr[i] * jac * 2.0 * inner_line_integral(hp, x, s, eps_scale);
    }
    return acc;
}

} // namespace

double hs_norm_sq_numeric(const KernelSpec& spec, const GridConfig& config) {
    spec.validate();
    config.validate();
    const double s = spec.energy.sqrt_abs_e();
    const double L = config.truncation_radius_factor / s;

    KernelSpec half = spec;
    const bool appendix = spec.variant == KernelVariant::appendix_b;

    switch (spec.domain) {
        case Domain::halfline_dirichlet:
            return hs_quadrant({half, appendix}, L);
        case Domain::line_dirichlet:
            // Same-sign quadrants carry the half-line kernel twice; the
            // opposite-sign quadrants vanish identically (appendix kernel
            // instead couples all four quadrants equally).
            half.domain = Domain::halfline_dirichlet;
            return (appendix ? 4.0 : 2.0) * hs_quadrant({half, appendix}, L);
        case Domain::line_free: {
            if (!spec.family.smeared())
                throw invalid_input("hs_norm_sq_numeric: free-line kernel with the exact "
                                    "family is not square integrable");
            // Parity decomposition: even (Neumann) + odd (Dirichlet) sectors.
            KernelSpec even = spec;
            even.domain = Domain::halfline_neumann_sector;
            KernelSpec odd = spec;
            odd.domain = Domain::halfline_dirichlet;
            return hs_quadrant({even, false}, L) + hs_quadrant({odd, false}, L);
        }
        case Domain::halfline_neumann_sector:
            if (!spec.family.smeared())
                throw invalid_input("hs_norm_sq_numeric: even-sector kernel with the exact "
                                    "family is not square integrable");
            return hs_quadrant({half, false}, L);
    }
    throw invalid_input("hs_norm_sq_numeric: unknown domain");
}

double diag_trace(const KernelSpec& spec, const Grid& grid) {
    spec.validate();
    const auto& x = grid.x();
    const auto& w = grid.x_weights();
    double acc = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double k = kernels::kernel_eval(spec, x[i], x[i]);
        acc += w[i] * k;
    }
    return spec.domain == Domain::line_dirichlet ? 2.0 * acc : acc;
}

// ---------------------------------------------------------------------------
// Eigensolvers
// ---------------------------------------------------------------------------

namespace {

double off_diagonal_sq(const SymMatrix& a) {
    double acc = 0.0;
    const std::size_t n = a.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) acc += 2.0 * a.at(i, j) * a.at(i, j);
    return acc;
}

void sort_descending(std::vector<double>& ev, SymMatrix* vecs) {
    const std::size_t n = ev.size();
    std::vector<std::size_t> idx(n);
    for (std::size_t i = 0; i < n; ++i) idx[i] = i;
    std::stable_sort(idx.begin(), idx.end(),
                     [&](std::size_t a, std::size_t b) { return ev[a] > ev[b]; });
    std::vector<double> ev2(n);
    for (std::size_t i = 0; i < n; ++i) ev2[i] = ev[idx[i]];
    ev.swap(ev2);
    if (vecs) {
        SymMatrix v2(n);
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t i = 0; i < n; ++i) v2.at(i, j) = vecs->at(i, idx[j]);
        *vecs = std::move(v2);
    }
}

} // namespace

SpectralResult eig_sym(const SymMatrix& m_in, const EigOptions& opts) {
    const std::size_t n = m_in.size();
    SymMatrix a = m_in;
    SymMatrix q;
    if (opts.vectors) {
        q = SymMatrix(n);
        for (std::size_t i = 0; i < n; ++i) q.at(i, i) = 1.0;
    }

    const double fro = a.frobenius();
    // negative tolerance can never be met; it forces the failure path
    const double target_sq =
        opts.tol < 0.0 ? -1.0
                       : (fro > 0.0 ? opts.tol * opts.tol * fro * fro
                                    : opts.tol * opts.tol);
    bool converged = (n < 2) || off_diagonal_sq(a) <= target_sq;

    for (int sweep = 0; sweep < opts.max_sweeps && !converged; ++sweep) {
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t qi = p + 1; qi < n; ++qi) {
                const double apq = a.at(p, qi);
                if (apq == 0.0) continue;
                const double app = a.at(p, p), aqq = a.at(qi, qi);
                // skip rotations that cannot move the off-norm
                if (std::abs(apq) < 1e-18 * (std::abs(app) + std::abs(aqq) + 1e-300))
                    continue;
                const double theta = 0.5 * (aqq - app) / apq;
                const double t = (theta >= 0.0)
                                     ? 1.0 / (theta + std::sqrt(1.0 + theta * theta))
                                     : 1.0 / (theta - std::sqrt(1.0 + theta * theta));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;

                // two-sided rotation as two vectorizable row passes followed
                // by the column pass over the same pair
                double* rp = a.row(p);
                double* rq = a.row(qi);
                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = rp[k], akq = rq[k];
                    rp[k] = c * akp - s * akq;
                    rq[k] = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = a.at(k, p), aqk = a.at(k, qi);
                    a.at(k, p) = c * apk - s * aqk;
                    a.at(k, qi) = s * apk + c * aqk;
                }
                if (opts.vectors) {
                    for (std::size_t k = 0; k < n; ++k) {
                        const double qkp = q.at(k, p), qkq = q.at(k, qi);
                        q.at(k, p) = c * qkp - s * qkq;
                        q.at(k, qi) = s * qkp + c * qkq;
                    }
                }
            }
        }
        converged = off_diagonal_sq(a) <= target_sq;
    }
    if (!converged)
        throw numerical_failure("eig_sym: Jacobi sweeps did not reach tolerance");

    SpectralResult r;
    r.eigenvalues.resize(n);
    for (std::size_t i = 0; i < n; ++i) r.eigenvalues[i] = a.at(i, i);
    sort_descending(r.eigenvalues, opts.vectors ? &q : nullptr);
    if (opts.vectors) r.eigenvectors = std::move(q);
    r.hs_norm_sq = 0.0;
    for (double v : r.eigenvalues) r.hs_norm_sq += v * v;
    r.det2 = det2(r.eigenvalues);
    r.parity.assign(n, std::nullopt);
    return r;
}

SpectralResult eig_sym(const DiscretizedOperator& op, const EigOptions& opts) {
    return eig_sym(op.matrix, opts);
}

std::vector<double> top_eigenvalues(const SymMatrix& m, int k, double tol,
                                    SubspaceCache* cache) {
    const std::size_t n = m.size();
    if (k <= 0) return {};
    if (static_cast<std::size_t>(k) >= n || n <= 24) {
        auto full = eig_sym(m);
        full.eigenvalues.resize(std::min<std::size_t>(k, n));
        return full.eigenvalues;
    }
    const std::size_t b = std::min<std::size_t>(n, static_cast<std::size_t>(k) + 6);

    std::vector<std::vector<double>> X;
    if (cache && cache->basis.size() == b && cache->basis.front().size() == n) {
        X = cache->basis;
    } else {
        // deterministic smooth start basis
        X.assign(b, std::vector<double>(n));
        for (std::size_t j = 0; j < b; ++j)
            for (std::size_t i = 0; i < n; ++i)
                X[j][i] = std::cos(static_cast<double>(j) * std::numbers::pi *
                                   (static_cast<double>(i) + 0.5) / static_cast<double>(n));
    }

    std::vector<std::vector<double>> Y(b, std::vector<double>(n));
    std::vector<double> ritz_prev(b, 0.0);
    int stable = 0;

    for (int iter = 0; iter < 600; ++iter) {
        for (std::size_t j = 0; j < b; ++j) m.matvec(X[j].data(), Y[j].data());
        // modified Gram-Schmidt on Y
        for (std::size_t j = 0; j < b; ++j) {
            for (std::size_t l = 0; l < j; ++l) {
                double dot = 0.0;
                for (std::size_t i = 0; i < n; ++i) dot += Y[l][i] * Y[j][i];
                for (std::size_t i = 0; i < n; ++i) Y[j][i] -= dot * Y[l][i];
            }
            double nrm = 0.0;
            for (double v : Y[j]) nrm += v * v;
            nrm = std::sqrt(nrm);
            if (nrm < 1e-290) {
                // re-seed a degenerate direction deterministically
                for (std::size_t i = 0; i < n; ++i)
                    Y[j][i] = std::sin((static_cast<double>(j) + 1.0) *
                                       std::numbers::pi * (static_cast<double>(i) + 1.0) /
                                       (static_cast<double>(n) + 1.0));
                nrm = 0.0;
                for (std::size_t l = 0; l < j; ++l) {
                    double dot = 0.0;
                    for (std::size_t i = 0; i < n; ++i) dot += Y[l][i] * Y[j][i];
                    for (std::size_t i = 0; i < n; ++i) Y[j][i] -= dot * Y[l][i];
                }
                for (double v : Y[j]) nrm += v * v;
                nrm = std::sqrt(nrm);
            }
            for (std::size_t i = 0; i < n; ++i) Y[j][i] /= nrm;
        }
        // Rayleigh-Ritz on the block
        for (std::size_t j = 0; j < b; ++j) m.matvec(Y[j].data(), X[j].data());
        SymMatrix t(b);
        for (std::size_t i2 = 0; i2 < b; ++i2)
            for (std::size_t j2 = i2; j2 < b; ++j2) {
                double dot = 0.0;
                for (std::size_t i = 0; i < n; ++i) dot += Y[i2][i] * X[j2][i];
                t.at(i2, j2) = t.at(j2, i2) = dot;
            }
        EigOptions small;
        small.vectors = true;
        auto ritz = eig_sym(t, small);

        // rotate the block onto the Ritz basis for the next iteration
        std::vector<std::vector<double>> Z(b, std::vector<double>(n, 0.0));
        for (std::size_t j = 0; j < b; ++j)
            for (std::size_t l = 0; l < b; ++l) {
                const double qlj = ritz.eigenvectors->at(l, j);
                if (qlj == 0.0) continue;
                for (std::size_t i = 0; i < n; ++i) Z[j][i] += qlj * Y[l][i];
            }
        X.swap(Z);

        double rel = 0.0;
        for (int j = 0; j < k; ++j) {
            const double cur = ritz.eigenvalues[j];
            const double scale = std::max(std::abs(cur), 1e-30);
            rel = std::max(rel, std::abs(cur - ritz_prev[j]) / scale);
        }
        ritz_prev = ritz.eigenvalues;
        if (rel < tol) {
            if (++stable >= 2) {
                if (cache) cache->basis = X;
                ritz.eigenvalues.resize(k);
                return ritz.eigenvalues;
            }
        } else {
            stable = 0;
        }
    }
    throw numerical_failure("top_eigenvalues: subspace iteration did not converge");
}

double det2(const std::vector<double>& eigenvalues) {
    double log_abs = 0.0;
    int sign = 1;
    for (double mu : eigenvalues) {
        const double om = 1.0 - mu;
        if (om == 0.0) return 0.0;
        if (std::abs(om) < 1e-300) return 0.0;
        if (om < 0.0) sign = -sign;
        log_abs += std::log(std::abs(om)) + mu;
    }
    return sign * std::exp(log_abs);
}

DiscretizedOperator sandwiched_R(const KernelSpec& spec, const Grid& grid) {
    spec.validate();
    if (!spec.assemblable())
        throw invalid_input("sandwiched_R: kernel not square integrable");

    // weighted Green matrix with the same kink compensation as assemble
    DiscretizedOperator gop;
    gop.spec = spec;
    gop.x_max = grid.x_max();
    const bool mirrored = mirrored_domain(spec);
    const auto& gx = grid.x();
    const auto& gw = grid.x_weights();
    const std::size_t nh = gx.size();
    if (!mirrored) {
        gop.x = gx;
        gop.weights = gw;
    } else {
        gop.x.resize(2 * nh);
        gop.weights.resize(2 * nh);
        for (std::size_t i = 0; i < nh; ++i) {
            gop.x[i] = -gx[nh - 1 - i];
            gop.weights[i] = gw[nh - 1 - i];
            gop.x[nh + i] = gx[i];
            gop.weights[nh + i] = gw[i];
        }
    }
    const std::size_t n = gop.x.size();
    SymMatrix g(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            double gv = 0.0;
            switch (spec.domain) {
                case Domain::halfline_dirichlet:
                    gv = kernels::green_dirichlet_halfline(gop.x[i], gop.x[j], spec.energy);
                    break;
                case Domain::line_dirichlet:
                    gv = kernels::green_dirichlet_line(gop.x[i], gop.x[j], spec.energy);
                    break;
                case Domain::line_free:
                    gv = kernels::green_free_line(gop.x[i], gop.x[j], spec.energy);
                    break;
                case Domain::halfline_neumann_sector:
                    gv = kernels::green_neumann_halfline(gop.x[i], gop.x[j], spec.energy);
                    break;
            }
            const double v = std::sqrt(gop.weights[i]) * gv * std::sqrt(gop.weights[j]);
            g.at(i, j) = v;
            g.at(j, i) = v;
        }
    {
        const auto& d = grid.kink_deficiency();
        for (std::size_t i = 0; i < nh; ++i) {
            const double corr = 4.0 * gx[i] * (-0.5) * d[i];
            if (!mirrored) {
                g.at(i, i) += corr;
            } else {
                g.at(nh - 1 - i, nh - 1 - i) += corr;
                g.at(nh + i, nh + i) += corr;
            }
        }
    }

    EigOptions opts;
    opts.vectors = true;
    auto eg = eig_sym(g, opts);
    const double top = eg.eigenvalues.empty() ? 0.0 : std::abs(eg.eigenvalues.front());
    std::vector<double> sq(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double ev = eg.eigenvalues[i];
        if (ev < -1e-10 * top)
            throw numerical_failure("sandwiched_R: Green matrix not positive semidefinite");
        sq[i] = std::sqrt(std::max(ev, 0.0));
    }
    // S = Q sqrt(L) Q^T
    const SymMatrix& q = *eg.eigenvectors;
    SymMatrix s(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            double acc = 0.0;
            for (std::size_t l = 0; l < n; ++l) acc += q.at(i, l) * sq[l] * q.at(j, l);
            s.at(i, j) = acc;
            s.at(j, i) = acc;
        }
    std::vector<double> vdiag(n);
    for (std::size_t i = 0; i < n; ++i)
        vdiag[i] = spec.coupling.lambda * kernels::potential(spec.family, gop.x[i]);

    gop.matrix = SymMatrix(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            double acc = 0.0;
            for (std::size_t l = 0; l < n; ++l) acc += s.at(i, l) * vdiag[l] * s.at(l, j);
            gop.matrix.at(i, j) = acc;
            gop.matrix.at(j, i) = acc;
        }
    return gop;
}

void dump_matrix(const DiscretizedOperator& op, const std::string& path) {
    std::ofstream f(path);
    if (!f) throw invalid_input("dump_matrix: cannot open " + path);
    const std::size_t n = op.matrix.size();
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", op.x_max);
    f << "n " << n << " xmax " << buf << "\n";
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            std::snprintf(buf, sizeof buf, "%.17g", op.matrix.at(i, j));
            f << buf << (j + 1 < n ? " " : "\n");
        }
    }
}

} // namespace bsc::op
