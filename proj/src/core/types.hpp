#ifndef BSC_CORE_TYPES_HPP
#define BSC_CORE_TYPES_HPP

#include <stdexcept>
#include <string>

namespace bsc {

// Thrown on domain violations (bad parameters, incompatible kernel/grid).
class invalid_input : public std::invalid_argument {
public:
    explicit invalid_input(const std::string& what) : std::invalid_argument(what) {}
};

// Thrown when an iterative scheme fails to reach its tolerance.
class numerical_failure : public std::runtime_error {
public:
    explicit numerical_failure(const std::string& what) : std::runtime_error(what) {}
};

// |E| for an energy E < 0, in the dimensionless convention (hbar = 2m = 1).
struct EnergyParam {
    double abs_e;

    explicit EnergyParam(double abs_e_) : abs_e(abs_e_) {
        if (!(abs_e > 0.0)) throw invalid_input("EnergyParam: |E| must be > 0");
    }
    static EnergyParam from_energy(double e) {
        if (!(e < 0.0)) throw invalid_input("EnergyParam: E must be < 0");
        return EnergyParam(-e);
    }
    double sqrt_abs_e() const;
};

// Attractive Coulomb strength.
struct Coupling {
    double lambda;

    explicit Coupling(double lambda_) : lambda(lambda_) {
        if (!(lambda > 0.0)) throw invalid_input("Coupling: lambda must be > 0");
    }
};

enum class FamilyKind { exact, softcore, rounded, cutoff };

// Potential family: the exact 1/|x| or one of the smeared families
// sandwiched between 0 and 1/|x|.
struct PotentialFamily {
    FamilyKind kind = FamilyKind::exact;
    double eps = 0.0;

    static PotentialFamily exact() { return {FamilyKind::exact, 0.0}; }
    static PotentialFamily make(FamilyKind k, double eps_) {
        if (k == FamilyKind::exact) return exact();
        if (!(eps_ > 0.0)) throw invalid_input("PotentialFamily: eps must be > 0");
        return {k, eps_};
    }
    bool smeared() const { return kind != FamilyKind::exact; }
};

enum class Domain {
    halfline_dirichlet,
    line_dirichlet,
    line_free,
    halfline_neumann_sector, // even-parity sector of the free-line problem
};

enum class KernelVariant { bs, appendix_b };

// Everything needed to evaluate one kernel pointwise.
struct KernelSpec {
    Domain domain = Domain::halfline_dirichlet;
    PotentialFamily family{};
    Coupling coupling{1.0};
    EnergyParam energy{1.0};
    KernelVariant variant = KernelVariant::bs;

    void validate() const {
        if (variant == KernelVariant::appendix_b && family.smeared())
            throw invalid_input("KernelSpec: appendix variant requires the exact family");
        if (variant == KernelVariant::appendix_b &&
            (domain == Domain::line_free || domain == Domain::halfline_neumann_sector))
            throw invalid_input("KernelSpec: appendix variant is defined for Dirichlet domains only");
    }
    // Domains whose operator is compact for the exact family. The free-line and
    // even-sector kernels with 1/|x| are not square integrable near the origin.
    bool assemblable() const {
        if (!family.smeared() &&
            (domain == Domain::line_free || domain == Domain::halfline_neumann_sector))
            return false;
        return true;
    }
};

const char* to_string(Domain d);
const char* to_string(FamilyKind k);

} // namespace bsc

#endif
