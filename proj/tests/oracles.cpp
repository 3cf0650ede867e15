#include "oracles.hpp"

#include <cmath>
#include <stdexcept>

namespace oracle {

namespace {

double simpson(const std::function<double(double)>& f, double a, double b, double fa,
               double fm, double fb) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adapt(const std::function<double(double)>& f, double a, double b, double fa,
             double fm, double fb, double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = simpson(f, a, m, fa, flm, fm);
    const double right = simpson(f, m, b, fm, frm, fb);
    if (depth <= 0) return left + right;
    if (std::abs(left + right - whole) <= 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return adapt(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) +
           adapt(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1);
}

} // namespace

double integrate(const std::function<double(double)>& f, double a, double b, double tol) {
    const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    const double whole = simpson(f, a, b, fa, fm, fb);
    return adapt(f, a, b, fa, fm, fb, whole, tol, 40);
}

std::vector<double> lu_solve(std::vector<double> a, std::vector<double> b) {
    const std::size_t n = b.size();
    if (a.size() != n * n) throw std::invalid_argument("lu_solve: size mismatch");
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::abs(a[r * n + col]) > std::abs(a[piv * n + col])) piv = r;
        if (a[piv * n + col] == 0.0) throw std::runtime_error("lu_solve: singular");
        if (piv != col) {
            for (std::size_t c = 0; c < n; ++c) std::swap(a[piv * n + c], a[col * n + c]);
            std::swap(b[piv], b[col]);
        }
        for (std::size_t r = col + 1; r < n; ++r) {
            const double f = a[r * n + col] / a[col * n + col];
            if (f == 0.0) continue;
            for (std::size_t c = col; c < n; ++c) a[r * n + c] -= f * a[col * n + c];
            b[r] -= f * b[col];
        }
    }
    std::vector<double> x(n, 0.0);
    for (std::size_t ri = n; ri-- > 0;) {
        double acc = b[ri];
        for (std::size_t c = ri + 1; c < n; ++c) acc -= a[ri * n + c] * x[c];
        x[ri] = acc / a[ri * n + ri];
    }
    return x;
}

namespace {

// Numerov sweep; returns the sign-weighted terminal value and the node count.
struct Shot {
    double terminal;
    int nodes;
};

Shot numerov(const std::function<double(double)>& v, Boundary bc, double e, double x_max,
             int n) {
    const double h = x_max / n;
    const double h2 = h * h;
    // q(x) = E + V_attractive(x) for psi'' = -q psi  (V already includes lambda)
    auto q = [&](double x) { return e + v(x); };

    double psi_prev, psi_cur, f_prev;
    if (bc == Boundary::dirichlet) {
        psi_prev = 0.0;
        psi_cur = h; // psi ~ x near the origin
        f_prev = 1.0; // multiplies the zero start value; V(0) never evaluated
    } else {
        // even sector: psi'(0) = 0; start with the parabola 1 - q(0) x^2 / 2
        psi_prev = 1.0;
        psi_cur = 1.0 - 0.5 * q(0.0) * h2;
        f_prev = 1.0 + h2 / 12.0 * q(0.0);
    }

    int nodes = 0;
    double f_cur = 1.0 + h2 / 12.0 * q(h);
    for (int i = 1; i < n; ++i) {
        const double x_next = (i + 1) * h;
        const double f_next = 1.0 + h2 / 12.0 * q(x_next);
        const double psi_next =
            ((12.0 - 10.0 * f_cur) * psi_cur - f_prev * psi_prev) / f_next;
        if ((psi_next > 0.0 && psi_cur < 0.0) || (psi_next < 0.0 && psi_cur > 0.0)) ++nodes;
        psi_prev = psi_cur;
        psi_cur = psi_next;
        f_prev = f_cur;
        f_cur = f_next;
        // renormalize to dodge overflow in classically forbidden regions
        const double m = std::abs(psi_cur);
        if (m > 1e200) {
            psi_cur /= m;
            psi_prev /= m;
        }
    }
    return {psi_cur, nodes};
}

} // namespace

double shooting_level(const std::function<double(double)>& v, int k, Boundary bc,
                      double x_max, int n_steps, double e_lo, double e_hi) {
    // The k-th level has k-1 interior nodes; as E rises through E_k the shot
    // gains its k-th node, so bisect on the node count.
    auto nodes_at = [&](double e) { return numerov(v, bc, e, x_max, n_steps).nodes; };
    double lo = e_lo, hi = e_hi; // lo deep (few nodes), hi shallow (many nodes)
    if (nodes_at(lo) > k - 1) throw std::runtime_error("shooting: lower bracket too shallow");
    if (nodes_at(hi) < k) throw std::runtime_error("shooting: upper bracket too deep");
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        (nodes_at(mid) >= k ? hi : lo) = mid;
        if (std::abs(hi - lo) < 1e-14 * std::abs(lo) + 1e-16) break;
    }
    return 0.5 * (lo + hi);
}

} // namespace oracle
