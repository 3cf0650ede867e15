#include "bscoulomb.h"

#include "core/analytic.hpp"
#include "core/convergence.hpp"
#include "core/kernels.hpp"
#include "core/operator.hpp"
#include "core/spectrum.hpp"
#include "core/verify.hpp"

#include <cmath>
#include <cstring>
#include <numbers>
#include <string>
#include <vector>

namespace {

thread_local std::string g_last_error;

void set_error(const char* what) { g_last_error = what ? what : ""; }

template <typename Fn>
bsc_status guarded(Fn&& fn) {
    try {
        fn();
        g_last_error.clear();
        return BSC_OK;
    } catch (const bsc::spectrum::no_bound_state& e) {
        set_error(e.what());
        return BSC_ERR_NO_BOUND_STATE;
    } catch (const bsc::invalid_input& e) {
        set_error(e.what());
        return BSC_ERR_INVALID_INPUT;
    } catch (const bsc::numerical_failure& e) {
        set_error(e.what());
        return BSC_ERR_NUMERICAL;
    } catch (const std::exception& e) {
        set_error(e.what());
        return BSC_ERR_INVALID_INPUT;
    }
}

bsc::Domain to_domain(bsc_domain d) {
    switch (d) {
        case BSC_DOMAIN_HALFLINE: return bsc::Domain::halfline_dirichlet;
        case BSC_DOMAIN_LINE:     return bsc::Domain::line_dirichlet;
        case BSC_DOMAIN_FREE:     return bsc::Domain::line_free;
        case BSC_DOMAIN_NEUMANN:  return bsc::Domain::halfline_neumann_sector;
    }
    throw bsc::invalid_input("unknown domain");
}

bsc::FamilyKind to_family(bsc_family f) {
    switch (f) {
        case BSC_FAMILY_EXACT:    return bsc::FamilyKind::exact;
        case BSC_FAMILY_SOFTCORE: return bsc::FamilyKind::softcore;
        case BSC_FAMILY_ROUNDED:  return bsc::FamilyKind::rounded;
        case BSC_FAMILY_CUTOFF:   return bsc::FamilyKind::cutoff;
    }
    throw bsc::invalid_input("unknown family");
}

} // namespace

struct bsc_problem {
    bsc::Domain domain = bsc::Domain::halfline_dirichlet;
    bsc::PotentialFamily family = bsc::PotentialFamily::exact();
    double lambda = 1.0;
    double abs_e = 1.0;
    bsc::GridConfig grid{};
    double eig_tol = 1e-12;

    bsc::KernelSpec kernel_spec() const {
        bsc::KernelSpec s;
        s.domain = domain;
        s.family = family;
        s.coupling = bsc::Coupling(lambda);
        s.energy = bsc::EnergyParam(abs_e);
        s.validate();
        return s;
    }
    bsc::spectrum::ProblemSpec problem_spec() const {
        bsc::spectrum::ProblemSpec p;
        p.domain = domain;
        p.family = family;
        p.coupling = bsc::Coupling(lambda);
        return p;
    }
};

struct bsc_report {
    std::vector<bsc::verify::Row> rows;
};

extern "C" {

bsc_problem* bsc_problem_create(void) { return new (std::nothrow) bsc_problem{}; }

void bsc_problem_destroy(bsc_problem* p) { delete p; }

bsc_status bsc_problem_set_domain(bsc_problem* p, bsc_domain d) {
    if (!p) return BSC_ERR_INVALID_INPUT;
    return guarded([&] { p->domain = to_domain(d); });
}

bsc_status bsc_problem_set_family(bsc_problem* p, bsc_family f, double eps) {
    if (!p) return BSC_ERR_INVALID_INPUT;
    return guarded([&] { p->family = bsc::PotentialFamily::make(to_family(f), eps); });
}

bsc_status bsc_problem_set_coupling(bsc_problem* p, double lambda) {
    if (!p) return BSC_ERR_INVALID_INPUT;
    return guarded([&] { p->lambda = bsc::Coupling(lambda).lambda; });
}

bsc_status bsc_problem_set_energy(bsc_problem* p, double abs_e) {
    if (!p) return BSC_ERR_INVALID_INPUT;
    return guarded([&] { p->abs_e = bsc::EnergyParam(abs_e).abs_e; });
}

bsc_status bsc_problem_set_grid(bsc_problem* p, int n_nodes, int panels,
                                double radius_factor) {
    if (!p) return BSC_ERR_INVALID_INPUT;
    return guarded([&] {
        bsc::GridConfig g;
        g.n_nodes = n_nodes;
        g.panels = panels;
        g.truncation_radius_factor = radius_factor;
        g.validate();
        p->grid = g;
    });
}

bsc_status bsc_problem_set_eig_tol(bsc_problem* p, double tol) {
    if (!p) return BSC_ERR_INVALID_INPUT;
    p->eig_tol = tol;
    return BSC_OK;
}

bsc_status bsc_kernel_eval(const bsc_problem* p, double x, double y, double* out) {
    if (!p || !out) return BSC_ERR_INVALID_INPUT;
    return guarded([&] { *out = bsc::kernels::bs_kernel(p->kernel_spec(), x, y); });
}

bsc_status bsc_potential_eval(const bsc_problem* p, double x, double* out) {
    if (!p || !out) return BSC_ERR_INVALID_INPUT;
    return guarded([&] { *out = bsc::kernels::potential(p->family, x); });
}

bsc_status bsc_hs_norm(const bsc_problem* p, bsc_hs_norm_result* out) {
    if (!p || !out) return BSC_ERR_INVALID_INPUT;
    return guarded([&] {
        const auto spec = p->kernel_spec();
        const double numeric = bsc::op::hs_norm_sq_numeric(spec, p->grid);
        double closed = 0.0, alt = 0.0;
        const bsc::Coupling c(p->lambda);
        const bsc::EnergyParam e(p->abs_e);
        switch (p->domain) {
            case bsc::Domain::halfline_dirichlet:
                closed = alt = bsc::analytic::hs_norm_sq_halfline(c, e);
                break;
            case bsc::Domain::line_dirichlet: {
                const auto dual = bsc::analytic::hs_norm_sq_line(c, e);
                closed = dual.paper_value;
                alt = dual.decoupled_value;
                break;
            }
            default:
                closed = alt = numeric; // no closed form for the smeared sectors
                break;
        }
        out->closed_form = closed;
        out->closed_form_alt = alt;
        out->numeric = numeric;
        const double ref = std::min(std::abs(closed - numeric), std::abs(alt - numeric));
        out->rel_err = ref / std::max(std::abs(numeric), 1e-300);
    });
}

bsc_status bsc_eigenvalues(const bsc_problem* p, int k, double* out) {
    if (!p || !out || k < 1) return BSC_ERR_INVALID_INPUT;
    return guarded([&] {
        if (p->eig_tol <= 0.0) {
            // an unreachable tolerance must surface as a numerical failure
            const bsc::EnergyParam e(p->abs_e);
            const bsc::Grid g(p->grid, e);
            auto disc = bsc::op::assemble(p->kernel_spec(), g);
            bsc::op::EigOptions opts;
            opts.tol = p->eig_tol;
            bsc::op::eig_sym(disc, opts);
            return;
        }
        const auto mu = bsc::spectrum::bs_eigenvalues(p->problem_spec(),
                                                      bsc::EnergyParam(p->abs_e), p->grid, k);
        for (int i = 0; i < k; ++i)
            out[i] = i < static_cast<int>(mu.size()) ? mu[i] : 0.0;
    });
}

bsc_status bsc_solve_level(const bsc_problem* p, int k, bsc_level_result* out) {
    if (!p || !out) return BSC_ERR_INVALID_INPUT;
    return guarded([&] {
        bsc::spectrum::LevelRequest req;
        req.problem = p->problem_spec();
        req.k = k;
        req.grid = p->grid;
        const auto r = bsc::spectrum::solve_level(req);
        out->energy = r.energy;
        out->mu_at_root = r.mu_at_root;
        out->det2_at_root = r.det2_at_root;
        out->iterations = r.iterations;
        out->multiplicity = r.multiplicity;
        out->parity = !r.parity ? 0 : (*r.parity == bsc::op::Parity::even ? 1 : 2);
    });
}

bsc_status bsc_count_bound_states(const bsc_problem* p, bsc_count_result* out) {
    if (!p || !out) return BSC_ERR_INVALID_INPUT;
    return guarded([&] {
        const auto r = bsc::spectrum::count_bound_states(p->problem_spec(),
                                                         bsc::EnergyParam(p->abs_e), p->grid);
        out->count = r.count;
        out->bound = r.bound;
        out->bound_stated = r.bound_paper;
    });
}

namespace {

void copy_record(const bsc::convergence::SweepRecord& r, bsc_sweep_record* out) {
    out->eps = r.eps;
    out->hs_distance = r.hs_distance;
    out->hs_norm_sq_smeared = r.hs_norm_sq_smeared;
    out->young_bound = r.young_bound;
    out->has_level_odd = r.level_odd.has_value() ? 1 : 0;
    out->has_level_even = r.level_even.has_value() ? 1 : 0;
    out->level_odd = r.level_odd.value_or(0.0);
    out->level_even = r.level_even.value_or(0.0);
}

} // namespace

bsc_status bsc_sweep(const bsc_problem* p, const double* eps_list, size_t n,
                     bsc_sweep_record* out) {
    if (!p || !eps_list || !out || n == 0) return BSC_ERR_INVALID_INPUT;
    return guarded([&] {
        const std::vector<double> eps(eps_list, eps_list + n);
        const auto recs = bsc::convergence::sweep(p->family, eps, bsc::Coupling(p->lambda),
                                                  bsc::EnergyParam(p->abs_e), p->grid);
        for (size_t i = 0; i < n; ++i) copy_record(recs[i], &out[i]);
    });
}

bsc_status bsc_klaus(const bsc_problem* p, const double* eps_list, size_t n,
                     bsc_sweep_record* out) {
    if (!p || !eps_list || !out || n == 0) return BSC_ERR_INVALID_INPUT;
    return guarded([&] {
        const std::vector<double> eps(eps_list, eps_list + n);
        const auto recs = bsc::convergence::klaus_experiment(p->family, bsc::Coupling(p->lambda),
                                                             eps, p->grid);
        for (size_t i = 0; i < n; ++i) copy_record(recs[i], &out[i]);
    });
}

bsc_status bsc_rank_one_check(const bsc_problem* p, double* out) {
    if (!p || !out) return BSC_ERR_INVALID_INPUT;
    return guarded([&] {
        *out = bsc::convergence::rank_one_check(bsc::EnergyParam(p->abs_e), p->grid);
    });
}

bsc_status bsc_dump_matrix(const bsc_problem* p, const char* path) {
    if (!p || !path) return BSC_ERR_INVALID_INPUT;
    return guarded([&] {
        const bsc::EnergyParam e(p->abs_e);
        const bsc::Grid g(p->grid, e);
        const auto disc = bsc::op::assemble(p->kernel_spec(), g);
        bsc::op::dump_matrix(disc, path);
    });
}

bsc_status bsc_verify_run(bsc_report** out) {
    if (!out) return BSC_ERR_INVALID_INPUT;
    return guarded([&] {
        auto* r = new bsc_report{};
        r->rows = bsc::verify::run_all();
        *out = r;
    });
}

void bsc_report_destroy(bsc_report* r) { delete r; }

int bsc_report_size(const bsc_report* r) {
    return r ? static_cast<int>(r->rows.size()) : 0;
}

namespace {
bool row_ok(const bsc_report* r, int i) {
    return r && i >= 0 && i < static_cast<int>(r->rows.size());
}
} // namespace

const char* bsc_report_name(const bsc_report* r, int i) {
    return row_ok(r, i) ? r->rows[i].name.c_str() : "";
}

const char* bsc_report_detail(const bsc_report* r, int i) {
    return row_ok(r, i) ? r->rows[i].detail.c_str() : "";
}

double bsc_report_value(const bsc_report* r, int i) {
    return row_ok(r, i) ? r->rows[i].value : 0.0;
}

double bsc_report_expected(const bsc_report* r, int i) {
    return row_ok(r, i) ? r->rows[i].expected : 0.0;
}

double bsc_report_tolerance(const bsc_report* r, int i) {
    return row_ok(r, i) ? r->rows[i].tolerance : 0.0;
}

int bsc_report_status(const bsc_report* r, int i) {
    if (!row_ok(r, i)) return 1;
    switch (r->rows[i].status) {
        case bsc::verify::RowStatus::pass: return 0;
        case bsc::verify::RowStatus::fail: return 1;
        case bsc::verify::RowStatus::note: return 2;
    }
    return 1;
}

int bsc_report_all_passed(const bsc_report* r) {
    return r && bsc::verify::all_passed(r->rows) ? 1 : 0;
}

const char* bsc_last_error(void) { return g_last_error.c_str(); }

const char* bsc_version(void) { return "1.0.0"; }

} // extern "C"
