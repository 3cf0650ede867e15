#include "kernels.hpp"

#include <cmath>
#include <algorithm>

namespace bsc::kernels {

namespace {

bool same_side(double x, double y) { return (x >= 0.0) == (y >= 0.0); }

void require_halfline(double x, double y) {
    if (x < 0.0 || y < 0.0)
        throw invalid_input("kernel: half-line domain requires x, y >= 0");
}

} // namespace

double green_dirichlet_halfline(double x, double y, const EnergyParam& energy) {
    require_halfline(x, y);
    const double s = energy.sqrt_abs_e();
    const double mn = std::min(x, y);
    return std::exp(-s * std::abs(x - y)) * (-std::expm1(-2.0 * s * mn)) / (2.0 * s);
}

double green_dirichlet_line(double x, double y, const EnergyParam& energy) {
    if (!same_side(x, y)) return 0.0;
    return green_dirichlet_halfline(std::abs(x), std::abs(y), energy);
}

double green_free_line(double x, double y, const EnergyParam& energy) {
    const double s = energy.sqrt_abs_e();
    return std::exp(-s * std::abs(x - y)) / (2.0 * s);
}

double green_neumann_halfline(double x, double y, const EnergyParam& energy) {
    require_halfline(x, y);
    const double s = energy.sqrt_abs_e();
    const double mn = std::min(x, y);
    return std::exp(-s * std::abs(x - y)) * (1.0 + std::exp(-2.0 * s * mn)) / (2.0 * s);
}

double potential(const PotentialFamily& family, double x) {
    const double ax = std::abs(x);
    switch (family.kind) {
        case FamilyKind::exact:
            if (ax == 0.0) throw invalid_input("potential: exact family is singular at x = 0");
            return 1.0 / ax;
        case FamilyKind::softcore:
            return 1.0 / (ax + family.eps);
        case FamilyKind::rounded:
            return 1.0 / std::hypot(ax, family.eps);
        case FamilyKind::cutoff:
            return ax >= family.eps ? 1.0 / ax : 1.0 / family.eps;
    }
    throw invalid_input("potential: unknown family");
}

double bs_kernel(const KernelSpec& spec, double x, double y) {
    spec.validate();
    if (spec.variant == KernelVariant::appendix_b) return appendix_kernel(spec, x, y);
    if (!spec.family.smeared() && (x == 0.0 || y == 0.0))
        throw invalid_input("bs_kernel: exact family is singular at the origin");

    double g = 0.0;
    switch (spec.domain) {
        case Domain::halfline_dirichlet:
            g = green_dirichlet_halfline(x, y, spec.energy);
            break;
        case Domain::line_dirichlet:
            g = green_dirichlet_line(x, y, spec.energy);
            break;
        case Domain::line_free:
            g = green_free_line(x, y, spec.energy);
            break;
        case Domain::halfline_neumann_sector:
            g = green_neumann_halfline(x, y, spec.energy);
            break;
    }
    if (g == 0.0) return 0.0;
    const double v = potential(spec.family, x) * potential(spec.family, y);
    return spec.coupling.lambda * std::sqrt(v) * g;
}

double appendix_kernel(const KernelSpec& spec, double x, double y) {
    spec.validate();
    if (spec.variant != KernelVariant::appendix_b)
        throw invalid_input("appendix_kernel: spec.variant must be appendix_b");
    if (spec.domain == Domain::halfline_dirichlet) {
        if (x < 0.0 || y < 0.0)
            throw invalid_input("appendix_kernel: half-line domain requires x, y >= 0");
    } else {
        x = std::abs(x);
        y = std::abs(y);
    }
    if (x == 0.0 || y == 0.0)
        throw invalid_input("appendix_kernel: singular at the origin");
    const double s = spec.energy.sqrt_abs_e();
    const double rt = std::sqrt(x) * std::sqrt(y);
    const double d = std::sqrt(x) - std::sqrt(y);
    // e^{-s x - s y + 2 s sqrt(xy)} = e^{-s (sqrt x - sqrt y)^2}, never overflows
    return std::exp(-s * d * d) * (-std::expm1(-2.0 * s * rt)) / (2.0 * s * rt);
}

double kernel_eval(const KernelSpec& spec, double x, double y) {
    return spec.variant == KernelVariant::appendix_b ? appendix_kernel(spec, x, y)
                                                     : bs_kernel(spec, x, y);
}

} // namespace bsc::kernels

namespace bsc {

double EnergyParam::sqrt_abs_e() const { return std::sqrt(abs_e); }

const char* to_string(Domain d) {
    switch (d) {
        case Domain::halfline_dirichlet:      return "halfline";
        case Domain::line_dirichlet:          return "line";
        case Domain::line_free:               return "free";
        case Domain::halfline_neumann_sector: return "neumann";
    }
    return "?";
}

const char* to_string(FamilyKind k) {
    switch (k) {
        case FamilyKind::exact:    return "exact";
        case FamilyKind::softcore: return "softcore";
        case FamilyKind::rounded:  return "rounded";
        case FamilyKind::cutoff:   return "cutoff";
    }
    return "?";
}

} // namespace bsc
