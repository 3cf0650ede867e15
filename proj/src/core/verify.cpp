#include "verify.hpp"

#include "analytic.hpp"
#include "convergence.hpp"
#include "kernels.hpp"
#include "operator.hpp"
#include "spectrum.hpp"

#include <cmath>
#include <numbers>

namespace bsc::verify {

using std::numbers::pi;

namespace {

void check(std::vector<Row>& rows, std::string name, std::string detail, double value,
           double expected, double tol) {
    Row r;
    r.name = std::move(name);
    r.detail = std::move(detail);
    r.value = value;
    r.expected = expected;
    r.tolerance = tol;
    r.status = std::abs(value - expected) <= tol ? RowStatus::pass : RowStatus::fail;
    rows.push_back(std::move(r));
}

void check_flag(std::vector<Row>& rows, std::string name, std::string detail, bool ok) {
    Row r;
    r.name = std::move(name);
    r.detail = std::move(detail);
    r.value = ok ? 1.0 : 0.0;
    r.expected = 1.0;
    r.tolerance = 0.0;
    r.status = ok ? RowStatus::pass : RowStatus::fail;
    rows.push_back(std::move(r));
}

void note(std::vector<Row>& rows, std::string name, std::string detail, double value,
          double reference) {
    Row r;
    r.name = std::move(name);
    r.detail = std::move(detail);
    r.value = value;
    r.expected = reference;
    r.tolerance = 0.0;
    r.status = RowStatus::note;
    rows.push_back(std::move(r));
}

KernelSpec halfline_exact(double lambda, double abs_e) {
    KernelSpec s;
    s.domain = Domain::halfline_dirichlet;
    s.family = PotentialFamily::exact();
    s.coupling = Coupling(lambda);
    s.energy = EnergyParam(abs_e);
    return s;
}

} // namespace

std::vector<Row> run_all() {
    std::vector<Row> rows;

    // 1. half-line HS norm
    {
        GridConfig cfg;
        cfg.n_nodes = 400;
        const double target = pi * pi / 24.0;
        const double v11 = op::hs_norm_sq_numeric(halfline_exact(1.0, 1.0), cfg);
        check(rows, "hs-halfline", "lambda^2 pi^2/(24|E|) at lambda=1,|E|=1,n=400", v11,
              target, 1e-6 * target);
        const double v24 = op::hs_norm_sq_numeric(halfline_exact(2.0, 4.0), cfg);
        check(rows, "hs-halfline-scaling", "lambda^2/|E| scaling at lambda=2,|E|=4", v24,
              v11, 1e-6 * v11);
    }

    // 2. zeta(2) integral identity
    {
        const double z = analytic::zeta2_integral();
        check(rows, "zeta2-integral", "double integral of the squared bracket = pi^2/6", z,
              pi * pi / 6.0, 1e-5);
        const double u = analytic::zeta2_integral_unsquared();
        note(rows, "zeta2-unsquared",
             "same integrand without the square: differs from pi^2/6, so the "
             "squared form is the zeta(2) identity",
             u, pi * pi / 6.0);
    }

    // 3. appendix norms and double sum
    {
        KernelSpec app = halfline_exact(1.0, 1.0);
        app.variant = KernelVariant::appendix_b;
        GridConfig cfg;
        cfg.truncation_radius_factor = 60.0;
        const double v = op::hs_norm_sq_numeric(app, cfg);
        check(rows, "hs-appendix-bplus", "13 pi^2/72 at |E|=1, split radius 60", v,
              13.0 * pi * pi / 72.0, 1e-5);
        const double s = analytic::appendix_double_sum(1e-8);
        check(rows, "appendix-double-sum", "anti-diagonal sum = 13 pi^2/18", s,
              13.0 * pi * pi / 18.0, 1e-6);
    }

    // 4. discrete eigenvalues against the scaling-law values
    {
        spectrum::ProblemSpec p;
        GridConfig cfg;
        cfg.n_nodes = 400;
        const auto mu = spectrum::bs_eigenvalues(p, EnergyParam(1.0), cfg, 3);
        double worst = 0.0;
        for (int k = 0; k < 3; ++k) {
            const double exact = 0.5 / (k + 1);
            worst = std::max(worst, std::abs(mu[k] - exact) / exact);
        }
        check(rows, "bs-eigenvalues-top3",
              "max relative error of {1/2, 1/4, 1/6} at lambda=1,|E|=1,n=400", worst, 0.0,
              1e-4);
    }

    // 5. bound-state levels, determinant at roots and midpoints
    {
        double worst_level = 0.0, worst_det_root = 0.0, worst_mid = 1e9;
        for (double lambda : {1.0, 2.0}) {
            std::vector<double> roots;
            for (int k = 1; k <= 3; ++k) {
                spectrum::LevelRequest req;
                req.problem.coupling = Coupling(lambda);
                req.k = k;
                req.grid.n_nodes = 400;
                const auto lev = spectrum::solve_level(req);
                const double exact = -lambda * lambda / (4.0 * k * k);
                worst_level =
                    std::max(worst_level, std::abs(lev.energy - exact) / std::abs(exact));
                worst_det_root = std::max(worst_det_root, std::abs(lev.det2_at_root));
                roots.push_back(-lev.energy);
            }
            for (std::size_t i = 0; i + 1 < roots.size(); ++i) {
                const double mid = std::sqrt(roots[i] * roots[i + 1]);
                GridConfig cfg;
                cfg.n_nodes = 240;
                const EnergyParam e(mid);
                const Grid g(cfg, e);
                const auto disc = op::assemble(halfline_exact(lambda, mid), g);
                const double d2 = op::det2(op::eig_sym(disc).eigenvalues);
                worst_mid = std::min(worst_mid, std::abs(d2));
            }
        }
        check(rows, "levels-exact",
              "max relative error of -lambda^2/(4k^2), lambda in {1,2}, k in {1,2,3}",
              worst_level, 0.0, 1e-4);
        check(rows, "levels-det2-root", "max |det2| across the six roots", worst_det_root,
              0.0, 1e-6);
        check_flag(rows, "levels-det2-midpoint", "min |det2| at inter-level midpoints > 1e-3",
                   worst_mid > 1e-3);
    }

    // 6. counting bound and exact count on a 20x20 log grid
    {
        int bound_viol = 0, floor_viol = 0;
        for (int i = 0; i < 20; ++i) {
            for (int j = 0; j < 20; ++j) {
                const double lambda =
                    0.6 * std::pow(6.0 / 0.6, static_cast<double>(i) / 19.0);
                const double abs_e =
                    0.4 * std::pow(4.0 / 0.4, static_cast<double>(j) / 19.0);
                spectrum::ProblemSpec p;
                p.coupling = Coupling(lambda);
                GridConfig cfg;
                cfg.n_nodes = 240;
                const auto r = spectrum::count_bound_states(p, EnergyParam(abs_e), cfg);
                if (static_cast<double>(r.count) > r.bound) ++bound_viol;
                const int want =
                    static_cast<int>(std::floor(lambda / (2.0 * std::sqrt(abs_e))));
                if (r.count != want) ++floor_viol;
            }
        }
        check(rows, "count-bound", "count <= lambda^2 pi^2/(24|E|) violations over 400 cases",
              bound_viol, 0.0, 0.0);
        check(rows, "count-floor", "count == floor(lambda/(2 sqrt|E|)) violations", floor_viol,
              0.0, 0.0);
    }

    // 7. non-trace-class witness
    {
        const KernelSpec spec = halfline_exact(1.0, 1.0);
        GridConfig c100, c1000;
        c100.truncation_radius_factor = 100.0;
        c1000.truncation_radius_factor = 1000.0;
        c100.n_nodes = c1000.n_nodes = 800;
        c100.panels = c1000.panels = 16;
        const EnergyParam e(1.0);
        const double t100 = op::diag_trace(spec, Grid(c100, e));
        const double t1000 = op::diag_trace(spec, Grid(c1000, e));
        const double growth = std::numbers::ln10 / 2.0;
        check(rows, "trace-growth", "diagonal trace grows by ln(10)/2 from X=100 to X=1000",
              t1000 - t100, growth, 0.01 * growth);
        const double h100 = op::hs_norm_sq_numeric(spec, c100);
        const double h1000 = op::hs_norm_sq_numeric(spec, c1000);
        check(rows, "hs-truncation-stable", "HS norm change under the same window change",
              std::abs(h1000 - h100), 0.0, 1e-6);
    }

    // 8. isospectrality of the sandwiched partner
    {
        const KernelSpec spec = halfline_exact(1.0, 1.0);
        GridConfig cfg;
        cfg.n_nodes = 100;
        const EnergyParam e(1.0);
        const Grid g(cfg, e);
        const auto b = op::top_eigenvalues(op::assemble(spec, g).matrix, 5);
        const auto r = op::top_eigenvalues(op::sandwiched_R(spec, g).matrix, 5);
        double worst = 0.0;
        for (int i = 0; i < 5; ++i)
            worst = std::max(worst, std::abs(b[i] - r[i]) / std::abs(b[i]));
        check(rows, "isospectral-sandwich", "top-5 eigenvalue match of the two sandwiches",
              worst, 0.0, 1e-8);
    }

    // 9. full-line factor adjudication
    {
        KernelSpec spec = halfline_exact(1.0, 1.0);
        spec.domain = Domain::line_dirichlet;
        GridConfig cfg;
        const double v = op::hs_norm_sq_numeric(spec, cfg);
        const double decoupled = pi * pi / 12.0;
        check(rows, "hs-line-decoupled", "quadrant quadrature = lambda^2 pi^2/(12|E|)", v,
              decoupled, 1e-6 * decoupled);
        note(rows, "hs-line-stated-factor",
             "stated full-line value lambda^2 pi^2/(6|E|) exceeds the quadrature "
             "by the decoupling factor 2 (documented discrepancy, not a failure)",
             v, pi * pi / 6.0);
    }

    // 10. smeared-family convergence sweeps
    {
        const std::vector<double> eps{1e-1, 1e-2, 1e-3, 1e-4};
        for (auto kind : {FamilyKind::softcore, FamilyKind::rounded}) {
            const auto fam = PotentialFamily::make(kind, 1.0);
            const auto recs =
                convergence::sweep(fam, eps, Coupling(1.0), EnergyParam(1.0), GridConfig{});
            bool dec = true, inc = true, young = true;
            for (std::size_t i = 0; i < recs.size(); ++i) {
                if (i > 0 && !(recs[i].hs_distance < recs[i - 1].hs_distance)) dec = false;
                if (i > 0 &&
                    !(recs[i].hs_norm_sq_smeared > recs[i - 1].hs_norm_sq_smeared))
                    inc = false;
                if (!(recs[i].hs_norm_sq_smeared < recs[i].young_bound)) young = false;
            }
            const std::string tag = to_string(kind);
            check_flag(rows, "sweep-" + tag + "-distance-decreasing",
                       "hs distance strictly decreasing over eps decades", dec);
            check_flag(rows, "sweep-" + tag + "-distance-10x",
                       "final distance at most 1/10 of the first",
                       recs.back().hs_distance <= 0.1 * recs.front().hs_distance);
            check_flag(rows, "sweep-" + tag + "-hs-increasing",
                       "smeared HS norm increasing toward pi^2/24", inc);
            check_flag(rows, "sweep-" + tag + "-young", "strict Young bound at every eps",
                       young);
        }
    }

    // 11. rank-one resolvent difference identity
    {
        double worst = 0.0;
        for (double abs_e : {0.25, 1.0, 4.0}) {
            GridConfig cfg;
            cfg.n_nodes = 100;
            worst = std::max(worst, convergence::rank_one_check(EnergyParam(abs_e), cfg));
        }
        check(rows, "rank-one-residual", "relative Frobenius residual, |E| in {1/4,1,4}",
              worst, 0.0, 1e-12);
    }

    // 12. Klaus phenomenon
    {
        const std::vector<double> eps{1e-1, 1e-2, 1e-3, 1e-4};
        const auto fam = PotentialFamily::make(FamilyKind::softcore, 1.0);
        const auto recs = convergence::klaus_experiment(fam, Coupling(1.0), eps, GridConfig{});
        const double target = -0.25;
        double odd_final = 0.0;
        bool have_final = recs.back().level_odd.has_value();
        if (have_final) odd_final = *recs.back().level_odd;
        check(rows, "klaus-odd-limit", "odd-sector ground level at eps=1e-4 vs -lambda^2/4",
              have_final ? odd_final : 1e9, target, 0.01 * std::abs(target));
        bool even_dec = true;
        for (std::size_t i = 1; i < recs.size(); ++i) {
            if (!recs[i].level_even || !recs[i - 1].level_even ||
                !(*recs[i].level_even < *recs[i - 1].level_even))
                even_dec = false;
        }
        check_flag(rows, "klaus-even-diverging",
                   "even-sector ground level strictly decreasing across the sweep", even_dec);
    }

    return rows;
}

bool all_passed(const std::vector<Row>& rows) {
    for (const auto& r : rows)
        if (r.status == RowStatus::fail) return false;
    return true;
}

} // namespace bsc::verify
