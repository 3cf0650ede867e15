#ifndef BSC_CORE_ANALYTIC_HPP
#define BSC_CORE_ANALYTIC_HPP

#include "grid.hpp"
#include "types.hpp"

#include <string>
#include <utility>

namespace bsc::analytic {

// Carrier for a closed-form reference constant.
struct ClosedFormReport {
    std::string name;
    double value = 0.0;
    std::string source;   // formula it came from
    double lambda = 0.0;
    double abs_e = 0.0;
    double eps = 0.0;
};

// Values that the literature states one way while the decoupling structure
// forces another; both are always reported, never merged.
struct DualValue {
    double paper_value = 0.0;
    double decoupled_value = 0.0;
};

// lambda^2 pi^2 / (24 |E|): HS norm squared of the half-line operator.
double hs_norm_sq_halfline(const Coupling& c, const EnergyParam& e);

// Full line: stated factor-4 relation vs the factor-2 forced by the Dirichlet
// decoupling (opposite-sign quadrants vanish).
DualValue hs_norm_sq_line(const Coupling& c, const EnergyParam& e);

// I(x) = sum_{l>=1} x^{2l} / (l (2l)!)  (equals 4 int_0^{x/2} sinh^2(y)/y dy).
double sinh_integral_I(double x);

// Dimensionless double integral of e^{-x} [(e^{min(x,y)}-1)/sqrt(xy)]^2 e^{-y};
// reference value zeta(2) = pi^2/6. config.truncation_radius_factor plays the
// role of the outer split radius.
double zeta2_integral(const GridConfig& config = {});

// Same integrand without the square; converges to a different constant, which
// settles that the squared form is the one reproducing zeta(2).
double zeta2_integral_unsquared(const GridConfig& config = {});

// sum_{l,m>=0} Gamma^2((l+m)/2 + 1) / ((l+1)!(m+1)!), summed along
// anti-diagonals with an Euler-Maclaurin tail (terms decay like s^{-3/2}).
// Reference value 13 pi^2 / 18.
double appendix_double_sum(double tolerance);

// HS norms of the appendix operators: (|b+|, |b|) = sqrt(13/(2|E|)) (pi/6, pi/3).
std::pair<double, double> appendix_hs_norms(const EnergyParam& e);

// Bound-state counting bound; half-line lambda^2 pi^2/(24|E|), full line dual.
DualValue counting_bound(Domain domain, const Coupling& c, const EnergyParam& e);

// Full-line integral of V_eps^2: softcore 2/eps, rounded pi/eps, cutoff 4/eps.
double smeared_l2_norm_sq(const PotentialFamily& family);

// Young-inequality upper bound 3 |V_eps|_2^2 / (8 |E|^{3/2}) for the smeared
// HS norm squared.
double smeared_hs_upper_bound(const PotentialFamily& family, const EnergyParam& e);

// -lambda^2/(4 n^2): the n-th Dirichlet half-line Coulomb level.
double exact_coulomb_level(const Coupling& c, int n);

// lambda / (2 n sqrt|E|): the n-th eigenvalue of the half-line operator.
double exact_bs_eigenvalue(const Coupling& c, const EnergyParam& e, int n);

// Coefficients of (P + |E|)^{-1} = a I - b P for the rank-one P with the
// 1/(2 sqrt|E|) prefactor; b_derived inverts exactly, b_paper is the printed
// coefficient (correct only if P is read without its prefactor).
struct RankOneCoeffs {
    double a = 0.0;
    double b_derived = 0.0;
    double b_paper = 0.0;
};
RankOneCoeffs rank_one_resolvent_coeffs(const EnergyParam& e);

} // namespace bsc::analytic

#endif
