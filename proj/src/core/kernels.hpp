#ifndef BSC_CORE_KERNELS_HPP
#define BSC_CORE_KERNELS_HPP

#include "types.hpp"

namespace bsc::kernels {

// Resolvent kernel of the half-line Laplacian with f(0)=0, at energy -|E|.
// Evaluated as e^{-s|x-y|} (1 - e^{-2 s min(x,y)}) / (2s), which is free of
// cancellation for all arguments and cannot overflow.
double green_dirichlet_halfline(double x, double y, const EnergyParam& energy);

// Same with the Dirichlet condition at the origin of the full line; the two
// half-lines decouple, so opposite-sign arguments give exactly zero.
double green_dirichlet_line(double x, double y, const EnergyParam& energy);

// Free resolvent kernel e^{-s|x-y|} / (2s).
double green_free_line(double x, double y, const EnergyParam& energy);

// Even-parity (Neumann) half-line kernel [e^{-s|x-y|} + e^{-s(x+y)}] / (2s):
// the image term enters with + sign instead of -.
double green_neumann_halfline(double x, double y, const EnergyParam& energy);

// V(x) for the given family. The exact family rejects x = 0.
double potential(const PotentialFamily& family, double x);

// lambda sqrt(V(x)) G(x,y) sqrt(V(y)) with G selected by spec.domain,
// or the appendix kernel when spec.variant says so.
double bs_kernel(const KernelSpec& spec, double x, double y);

// Appendix kernel: exp factors with sqrt(x) sqrt(y) in place of min(x,y);
// carries no coupling. Half-line for halfline domains, |x|,|y| otherwise.
double appendix_kernel(const KernelSpec& spec, double x, double y);

// Dispatch on spec.variant.
double kernel_eval(const KernelSpec& spec, double x, double y);

} // namespace bsc::kernels

#endif
