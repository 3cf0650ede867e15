#include "analytic.hpp"

#include "kernels.hpp"
#include "operator.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace bsc::analytic {

using std::numbers::pi;

double hs_norm_sq_halfline(const Coupling& c, const EnergyParam& e) {
    return c.lambda * c.lambda * pi * pi / (24.0 * e.abs_e);
}

DualValue hs_norm_sq_line(const Coupling& c, const EnergyParam& e) {
    const double half = hs_norm_sq_halfline(c, e);
    return {4.0 * half, 2.0 * half};
}

double sinh_integral_I(double x) {
    if (x < 0.0) throw invalid_input("sinh_integral_I: x must be >= 0");
    if (x > 700.0) throw invalid_input("sinh_integral_I: out of range, e^x overflows");
    if (x == 0.0) return 0.0;
    const double x2 = x * x;
    double term = x2 / 2.0; // l = 1
    double sum = term;
    for (int l = 1; l < 2000; ++l) {
        // t_{l+1}/t_l = x^2 l / ((l+1)(2l+1)(2l+2))
        term *= x2 * l / (static_cast<double>(l + 1) * (2 * l + 1) * (2 * l + 2));
        sum += term;
        if (term < 1e-16 * sum) return sum;
    }
    throw numerical_failure("sinh_integral_I: series did not terminate");
}

double zeta2_integral(const GridConfig& config) {
    config.validate();
    // The integrand is the squared half-line kernel at lambda = 1, |E| = 1/4,
    // where the prefactor lambda^2/(4|E|) is exactly 1.
    KernelSpec spec;
    spec.domain = Domain::halfline_dirichlet;
    spec.family = PotentialFamily::exact();
    spec.coupling = Coupling(1.0);
    spec.energy = EnergyParam(0.25);
    GridConfig cfg = config;
    cfg.truncation_radius_factor = config.truncation_radius_factor / 2.0; // L = factor
    if (cfg.truncation_radius_factor < 10.0) cfg.truncation_radius_factor = 10.0;
    return op::hs_norm_sq_numeric(spec, cfg);
}

double zeta2_integral_unsquared(const GridConfig& config) {
    config.validate();
    // 2 int_0^inf dx int_0^inf dt e^{-(x+t)} (1-e^{-x}) / sqrt(x (x+t));
    // exponential decay in every direction, so a fixed truncation suffices.
    const double radius = std::max(config.truncation_radius_factor, 40.0);
    std::vector<double> u, wu;
    composite_gauss_legendre(std::sqrt(radius), 16, 16, u, wu);
    double acc = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        const double x = u[i] * u[i];
        const double lo = std::max(std::min(x, radius) / 4.0, radius * 0x1p-46);
        int p = std::clamp(static_cast<int>(std::ceil(std::log2(radius / lo))), 8, 48);
        std::vector<double> t, wt;
        composite_gauss_legendre(radius, p, 14, t, wt);
        double inner = 0.0;
        for (std::size_t j = 0; j < t.size(); ++j)
            inner += wt[j] * std::exp(-(x + t[j])) * (-std::expm1(-x)) /
                     std::sqrt(x * (x + t[j]));
        acc += wu[i] * 2.0 * u[i] * 2.0 * inner;
    }
    return acc;
}

double appendix_double_sum(double tolerance) {
    if (!(tolerance > 0.0)) throw invalid_input("appendix_double_sum: tolerance must be > 0");
    if (tolerance < 1e-9)
        throw numerical_failure("appendix_double_sum: tolerance below the scheme floor");

    // Anti-diagonal u = l + m contributes A(u) - B(u) with
    //   A(u) = Gamma(u/2+1)^2 2^{u+2} / (u+2)! ,  B(u) = 2 Gamma(u/2+1)^2 / (u+2)!,
    // both satisfying exact ratio recurrences within one parity. Terms decay
    // like s^{-3/2}, so the sum stops at the tolerance and an Euler-Maclaurin
    // estimate supplies the tail.
    const int u_cap = 200000;
    double a[2] = {2.0, pi / 3.0};
    double b[2] = {1.0, pi / 12.0};
    double sum = (a[0] - b[0]) + (a[1] - b[1]);
    int u_stop = 0;
    for (int u = 2; u <= u_cap; ++u) {
        const double du = static_cast<double>(u);
        a[u % 2] *= du * du / ((du + 1.0) * (du + 2.0));
        b[u % 2] *= du * du / (4.0 * (du + 1.0) * (du + 2.0));
        const double term = a[u % 2] - b[u % 2];
        sum += term;
        if (u >= 256 && term < tolerance * sum) {
            u_stop = u;
            break;
        }
    }
    if (u_stop == 0)
        throw numerical_failure("appendix_double_sum: tolerance not reached within the cap");

    // Euler-Maclaurin tail for A (B's tail is ~2^{-u}, below rounding):
    // sum_{u>U} f(u) ~ int_{U+1/2}^inf f dx + f'(U+1/2)/24. The Stirling-series
    // form of log A has its large terms cancelled analytically, so f keeps
    // full relative accuracy at arbitrarily large arguments (plain lgamma
    // differences lose ~1e-5 of the exponent near x ~ 1e9):
    //   log A(x) = -(3/2) log(x+3) + log(2 sqrt(2 pi))
    //              + 3/(2(x+3)) + 1/(3(x+2)) - 1/(12(x+3)) + 2/(3(x+3)^2) + O(x^-3)
    const auto f = [](double x) {
        const double x3 = x + 3.0, x2 = x + 2.0;
        const double lg = -1.5 * std::log(x3) + std::log(2.0 * std::sqrt(2.0 * pi)) +
                          1.5 / x3 + 1.0 / (3.0 * x2) - 1.0 / (12.0 * x3) +
                          2.0 / (3.0 * x3 * x3);
        return std::exp(lg);
    };
    const double x0 = u_stop + 0.5;
    std::vector<double> t, wt;
    composite_gauss_legendre(1.0, 4, 32, t, wt);
    double integral = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        const double x = x0 / (t[i] * t[i]);
        integral += wt[i] * f(x) * 2.0 * x0 / (t[i] * t[i] * t[i]);
    }
    const double h = 1.0;
    const double fprime = (f(x0 + h) - f(x0 - h)) / (2.0 * h);
    return sum + integral + fprime / 24.0;
}

std::pair<double, double> appendix_hs_norms(const EnergyParam& e) {
    const double root = std::sqrt(13.0 / (2.0 * e.abs_e));
    return {root * pi / 6.0, root * pi / 3.0};
}

DualValue counting_bound(Domain domain, const Coupling& c, const EnergyParam& e) {
    const double half = hs_norm_sq_halfline(c, e);
    switch (domain) {
        case Domain::halfline_dirichlet:
            return {half, half};
        case Domain::line_dirichlet:
            return {4.0 * half, 2.0 * half};
        default:
            throw invalid_input("counting_bound: defined for the Dirichlet domains");
    }
}

double smeared_l2_norm_sq(const PotentialFamily& family) {
    if (!family.smeared())
        throw invalid_input("smeared_l2_norm_sq: exact potential is not square integrable");
    switch (family.kind) {
        case FamilyKind::softcore: return 2.0 / family.eps;
        case FamilyKind::rounded:  return pi / family.eps;
        case FamilyKind::cutoff:   return 4.0 / family.eps;
        default: break;
    }
    throw invalid_input("smeared_l2_norm_sq: unknown family");
}

double smeared_hs_upper_bound(const PotentialFamily& family, const EnergyParam& e) {
    return 3.0 * smeared_l2_norm_sq(family) / (8.0 * std::pow(e.abs_e, 1.5));
}

double exact_coulomb_level(const Coupling& c, int n) {
    if (n < 1) throw invalid_input("exact_coulomb_level: n must be >= 1");
    return -c.lambda * c.lambda / (4.0 * static_cast<double>(n) * n);
}

double exact_bs_eigenvalue(const Coupling& c, const EnergyParam& e, int n) {
    if (n < 1) throw invalid_input("exact_bs_eigenvalue: n must be >= 1");
    return c.lambda / (2.0 * n * e.sqrt_abs_e());
}

RankOneCoeffs rank_one_resolvent_coeffs(const EnergyParam& e) {
    const double ae = e.abs_e;
    RankOneCoeffs r;
    r.a = 1.0 / ae;
    // P = |g><g| / (2 sqrt|E|), |g|^2 = 1/sqrt|E|  =>  coefficient of P is
    // 1 / (|E| (|E| + 1/(2|E|))) = 1 / (|E|^2 + 1/2).
    r.b_derived = 1.0 / (ae * ae + 0.5);
    r.b_paper = 1.0 / (std::sqrt(ae) * (1.0 + std::pow(ae, 1.5)));
    return r;
}

} // namespace bsc::analytic
