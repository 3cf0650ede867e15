// Command-line front end; talks to the library exclusively through the
// shared-library C interface.

#include "bscoulomb.h"
#include "output.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

namespace {

struct Options {
    std::string command;
    std::string domain = "halfline";
    std::string family = "exact";
    double eps = 0.1;
    bool eps_set = false;
    double lambda = 1.0;
    double abs_e = 1.0;
    int n = 400;
    int panels = 8;
    double factor = 40.0;
    int k = 0; // per-command default
    double eig_tol = 1e-12;
    std::vector<double> eps_list{1e-1, 1e-2, 1e-3, 1e-4};
    std::string format = "json";
    std::string out_dir;
    std::string dump_path;
    std::string config_path;
};

[[noreturn]] void die(int code, const std::string& msg) {
    std::cerr << "bscoulomb: " << msg << "\n";
    std::exit(code);
}

int status_to_exit(bsc_status s) {
    switch (s) {
        case BSC_OK: return 0;
        case BSC_ERR_INVALID_INPUT: return 1;
        default: return 2;
    }
}

void require_ok(bsc_status s) {
    if (s != BSC_OK) die(status_to_exit(s), bsc_last_error());
}

struct ProblemHandle {
    bsc_problem* p = nullptr;
    ProblemHandle() : p(bsc_problem_create()) {
        if (!p) die(2, "out of memory");
    }
    ~ProblemHandle() { bsc_problem_destroy(p); }
    ProblemHandle(const ProblemHandle&) = delete;
    ProblemHandle& operator=(const ProblemHandle&) = delete;
};

bsc_domain parse_domain(const std::string& d) {
    if (d == "halfline") return BSC_DOMAIN_HALFLINE;
    if (d == "line") return BSC_DOMAIN_LINE;
    if (d == "free") return BSC_DOMAIN_FREE;
    if (d == "neumann") return BSC_DOMAIN_NEUMANN;
    die(1, "unknown domain: " + d);
}

bsc_family parse_family(const std::string& f) {
    if (f == "exact") return BSC_FAMILY_EXACT;
    if (f == "softcore") return BSC_FAMILY_SOFTCORE;
    if (f == "rounded") return BSC_FAMILY_ROUNDED;
    if (f == "cutoff") return BSC_FAMILY_CUTOFF;
    die(1, "unknown family: " + f);
}

void configure(const ProblemHandle& h, const Options& o) {
    require_ok(bsc_problem_set_domain(h.p, parse_domain(o.domain)));
    const bsc_family fam = parse_family(o.family);
    require_ok(bsc_problem_set_family(h.p, fam, fam == BSC_FAMILY_EXACT ? 0.0 : o.eps));
    require_ok(bsc_problem_set_coupling(h.p, o.lambda));
    require_ok(bsc_problem_set_energy(h.p, o.abs_e));
    require_ok(bsc_problem_set_grid(h.p, o.n, o.panels, o.factor));
    require_ok(bsc_problem_set_eig_tol(h.p, o.eig_tol));
}

out::Json meta_object(const Options& o) {
    auto m = out::Json::object();
    m.set("command", o.command)
        .set("domain", o.domain)
        .set("family", o.family)
        .set("lambda", o.lambda)
        .set("abs_e", o.abs_e)
        .set("n", o.n)
        .set("panels", o.panels)
        .set("factor", o.factor)
        .set("version", std::string(bsc_version()));
    if (o.family != "exact") m.set("eps", o.eps);
    if (o.k > 0) m.set("k", o.k);
    if (o.command == "sweep" || o.command == "klaus") {
        out::JsonArray eps;
        for (double e : o.eps_list) eps.emplace_back(e);
        m.set("eps_list", std::move(eps));
    }
    return m;
}

std::string timestamp_now() {
    using namespace std::chrono;
    const auto now = system_clock::now();
    const std::time_t t = system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    const auto ms = duration_cast<milliseconds>(now.time_since_epoch()).count() % 1000;
    char buf[40];
    std::snprintf(buf, sizeof buf, "%04d%02d%02dT%02d%02d%02d%03d", tm.tm_year + 1900,
                  tm.tm_mon + 1, tm.tm_mday, tm.tm_hour, tm.tm_min, tm.tm_sec,
                  static_cast<int>(ms));
    return buf;
}

void write_outputs(const Options& o, const std::string& payload, const std::string& ext) {
    std::string dir = o.out_dir;
    if (dir.empty()) {
        if (const char* env = std::getenv("BS_COULOMB_OUT")) dir = env;
    }
    if (dir.empty()) return;
    std::filesystem::create_directories(dir);
    const auto base = std::filesystem::path(dir);
    const std::string stamped = o.command + "-" + timestamp_now() + "." + ext;
    for (const std::string& name : {stamped, o.command + "-latest." + ext}) {
        std::ofstream f(base / name, std::ios::binary);
        if (!f) die(1, "cannot write " + (base / name).string());
        f << payload;
    }
}

void emit(const Options& o, out::Json data_json, const out::Csv& csv) {
    std::string payload;
    std::string ext;
    if (o.format == "json") {
        auto root = out::Json::object();
        root.set("meta", meta_object(o)).set("data", std::move(data_json));
        payload = root.dump(2);
        ext = "json";
    } else {
        payload = csv.dump();
        ext = "csv";
    }
    std::cout << payload;
    write_outputs(o, payload, ext);
}

const char* parity_name(int p) { return p == 1 ? "even" : (p == 2 ? "odd" : "none"); }

int run_hs_norm(const Options& o) {
    ProblemHandle h;
    configure(h, o);
    bsc_hs_norm_result r{};
    const auto st = bsc_hs_norm(h.p, &r);
    if (st != BSC_OK) die(status_to_exit(st), bsc_last_error());

    auto row = out::Json::object();
    row.set("closed_form", r.closed_form)
        .set("closed_form_alt", r.closed_form_alt)
        .set("numeric", r.numeric)
        .set("rel_err", r.rel_err);
    out::Csv csv({"closed_form", "closed_form_alt", "numeric", "rel_err"});
    csv.add_row({out::format_double(r.closed_form), out::format_double(r.closed_form_alt),
                 out::format_double(r.numeric), out::format_double(r.rel_err)});
    emit(o, out::JsonArray{std::move(row)}, csv);
    return 0;
}

int run_eigs(const Options& o) {
    ProblemHandle h;
    configure(h, o);
    const int k = o.k > 0 ? o.k : 5;
    std::vector<double> mu(static_cast<std::size_t>(k), 0.0);
    const auto st = bsc_eigenvalues(h.p, k, mu.data());
    if (st != BSC_OK) die(status_to_exit(st), bsc_last_error());
    if (!o.dump_path.empty()) require_ok(bsc_dump_matrix(h.p, o.dump_path.c_str()));

    out::JsonArray rows;
    out::Csv csv({"k", "mu"});
    for (int i = 0; i < k; ++i) {
        auto row = out::Json::object();
        row.set("k", i + 1).set("mu", mu[static_cast<std::size_t>(i)]);
        rows.push_back(std::move(row));
        csv.add_row({std::to_string(i + 1), out::format_double(mu[static_cast<std::size_t>(i)])});
    }
    emit(o, std::move(rows), csv);
    return 0;
}

int run_levels(const Options& o) {
    ProblemHandle h;
    configure(h, o);
    const int k = o.k > 0 ? o.k : 1;
    bsc_level_result r{};
    const auto st = bsc_solve_level(h.p, k, &r);
    if (st != BSC_OK) die(status_to_exit(st), bsc_last_error());

    auto row = out::Json::object();
    row.set("k", k)
        .set("energy", r.energy)
        .set("mu_at_root", r.mu_at_root)
        .set("det2_at_root", r.det2_at_root)
        .set("iterations", r.iterations)
        .set("multiplicity", r.multiplicity)
        .set("parity", parity_name(r.parity));
    out::Csv csv({"k", "energy", "mu_at_root", "det2_at_root", "iterations", "multiplicity",
                  "parity"});
    csv.add_row({std::to_string(k), out::format_double(r.energy),
                 out::format_double(r.mu_at_root), out::format_double(r.det2_at_root),
                 std::to_string(r.iterations), std::to_string(r.multiplicity),
                 parity_name(r.parity)});
    emit(o, out::JsonArray{std::move(row)}, csv);
    return 0;
}

int run_count(const Options& o) {
    ProblemHandle h;
    configure(h, o);
    bsc_count_result r{};
    const auto st = bsc_count_bound_states(h.p, &r);
    if (st != BSC_OK) die(status_to_exit(st), bsc_last_error());

    auto row = out::Json::object();
    row.set("count", r.count).set("bound", r.bound).set("bound_stated", r.bound_stated);
    out::Csv csv({"count", "bound", "bound_stated"});
    csv.add_row({std::to_string(r.count), out::format_double(r.bound),
                 out::format_double(r.bound_stated)});
    emit(o, out::JsonArray{std::move(row)}, csv);
    return 0;
}

int run_sweeps(const Options& o, bool klaus) {
    ProblemHandle h;
    configure(h, o);
    std::vector<bsc_sweep_record> recs(o.eps_list.size());
    const auto st = klaus ? bsc_klaus(h.p, o.eps_list.data(), o.eps_list.size(), recs.data())
                          : bsc_sweep(h.p, o.eps_list.data(), o.eps_list.size(), recs.data());
    if (st != BSC_OK) die(status_to_exit(st), bsc_last_error());

    out::JsonArray rows;
    out::Csv csv(klaus
                     ? std::vector<std::string>{"eps", "level_odd", "level_even"}
                     : std::vector<std::string>{"eps", "hs_distance", "hs_norm_sq_smeared",
                                                "young_bound"});
    for (const auto& r : recs) {
        auto row = out::Json::object();
        row.set("eps", r.eps);
        if (klaus) {
            row.set("level_odd", r.has_level_odd ? out::Json(r.level_odd) : out::Json(nullptr));
            row.set("level_even",
                    r.has_level_even ? out::Json(r.level_even) : out::Json(nullptr));
            csv.add_row({out::format_double(r.eps),
                         r.has_level_odd ? out::format_double(r.level_odd) : "",
                         r.has_level_even ? out::format_double(r.level_even) : ""});
        } else {
            row.set("hs_distance", r.hs_distance)
                .set("hs_norm_sq_smeared", r.hs_norm_sq_smeared)
                .set("young_bound", r.young_bound);
            csv.add_row({out::format_double(r.eps), out::format_double(r.hs_distance),
                         out::format_double(r.hs_norm_sq_smeared),
                         out::format_double(r.young_bound)});
        }
        rows.push_back(std::move(row));
    }
    emit(o, std::move(rows), csv);
    return 0;
}

int run_verify(const Options& o) {
    bsc_report* rep = nullptr;
    const auto st = bsc_verify_run(&rep);
    if (st != BSC_OK) die(status_to_exit(st), bsc_last_error());

    const int n = bsc_report_size(rep);
    out::JsonArray rows;
    out::Csv csv({"name", "status", "value", "expected", "tolerance", "detail"});
    int failed = 0;
    std::string table;
    for (int i = 0; i < n; ++i) {
        const int status = bsc_report_status(rep, i);
        const char* tag = status == 0 ? "PASS" : (status == 1 ? "FAIL" : "NOTE");
        if (status == 1) ++failed;
        char line[256];
        std::snprintf(line, sizeof line, "%-4s %-28s value=%-24.17g expected=%-24.17g\n", tag,
                      bsc_report_name(rep, i), bsc_report_value(rep, i),
                      bsc_report_expected(rep, i));
        table += line;

        auto row = out::Json::object();
        row.set("name", std::string(bsc_report_name(rep, i)))
            .set("status", std::string(status == 0 ? "pass" : (status == 1 ? "fail" : "note")))
            .set("value", bsc_report_value(rep, i))
            .set("expected", bsc_report_expected(rep, i))
            .set("tolerance", bsc_report_tolerance(rep, i))
            .set("detail", std::string(bsc_report_detail(rep, i)));
        rows.push_back(std::move(row));
        csv.add_row({bsc_report_name(rep, i), status == 0 ? "pass" : (status == 1 ? "fail" : "note"),
                     out::format_double(bsc_report_value(rep, i)),
                     out::format_double(bsc_report_expected(rep, i)),
                     out::format_double(bsc_report_tolerance(rep, i)),
                     std::string("\"") + bsc_report_detail(rep, i) + "\""});
    }
    const bool ok = bsc_report_all_passed(rep) != 0;
    bsc_report_destroy(rep);

    std::cout << table;
    char summary[128];
    std::snprintf(summary, sizeof summary, "%d checks, %d failed\n", n, failed);
    std::cout << summary;

    // machine-readable payload goes to files only; stdout keeps the table
    std::string payload;
    std::string ext;
    Options oo = o;
    if (o.format == "json") {
        auto root = out::Json::object();
        root.set("meta", meta_object(oo)).set("data", out::Json(std::move(rows)));
        payload = root.dump(2);
        ext = "json";
    } else {
        payload = csv.dump();
        ext = "csv";
    }
    write_outputs(o, payload, ext);
    return ok ? 0 : 2;
}

void add_common(CLI::App* cmd, Options& o) {
    cmd->option_defaults()->always_capture_default();
    cmd->option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    cmd->add_option("--domain", o.domain, "halfline|line|free|neumann")
        ->check(CLI::IsMember({"halfline", "line", "free", "neumann"}));
    cmd->add_option("--family", o.family, "exact|softcore|rounded|cutoff")
        ->check(CLI::IsMember({"exact", "softcore", "rounded", "cutoff"}));
    cmd->add_option("--eps", o.eps, "smearing parameter")->check(CLI::PositiveNumber);
    cmd->add_option("--lambda", o.lambda, "coupling strength")->check(CLI::PositiveNumber);
    cmd->add_option("--abs-e", o.abs_e, "|E| for E < 0")->check(CLI::PositiveNumber);
    cmd->add_option("--n", o.n, "quadrature nodes")->check(CLI::Range(8, 100000));
    cmd->add_option("--panels", o.panels, "graded panels")->check(CLI::Range(1, 64));
    cmd->add_option("--factor", o.factor, "X_max = factor/sqrt|E|")
        ->check(CLI::Range(10.0, 1e9));
    cmd->add_option("--eig-tol", o.eig_tol, "eigensolver off-diagonal tolerance");
    cmd->add_option("--format", o.format, "json|csv")->check(CLI::IsMember({"json", "csv"}));
    cmd->add_option("--out", o.out_dir, "output directory (default $BS_COULOMB_OUT)");
    cmd->add_option("--config", o.config_path, "flat key = value configuration file");
}

// Flat "key = value" configuration: keys are the long option names without
// the leading dashes. The file's entries are expanded into flags placed ahead
// of the command line, so explicit flags always win.
std::vector<std::string> expand_config(const std::vector<std::string>& args) {
    std::string path;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
        else if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
    }
    if (path.empty()) return args;
    std::ifstream f(path);
    if (!f) die(1, "cannot read config file: " + path);

    std::vector<std::string> out;
    out.push_back(args.front()); // subcommand name
    std::string line;
    int lineno = 0;
    auto trim = [](std::string s) {
        const auto b = s.find_first_not_of(" \t\r");
        const auto e = s.find_last_not_of(" \t\r");
        return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    while (std::getline(f, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos)
            die(1, "config line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(t.substr(0, eq));
        const std::string value = trim(t.substr(eq + 1));
        if (key.empty() || value.empty())
            die(1, "config line " + std::to_string(lineno) + ": expected key = value");
        out.push_back("--" + key);
        out.push_back(value);
    }
    out.insert(out.end(), args.begin() + 1, args.end());
    return out;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Birman-Schwinger toolkit for the 1-D Coulomb Hamiltonian"};
    app.require_subcommand(1);

    Options o;

    auto* verify = app.add_subcommand("verify", "run the full check suite");
    add_common(verify, o);
    auto* hs = app.add_subcommand("hs-norm", "Hilbert-Schmidt norm, closed form vs numeric");
    add_common(hs, o);
    auto* eigs = app.add_subcommand("eigs", "top eigenvalues of the discretized operator");
    add_common(eigs, o);
    eigs->add_option("--k", o.k, "how many eigenvalues")->check(CLI::Range(1, 1000));
    eigs->add_option("--dump-matrix", o.dump_path, "write the assembled matrix to a file");
    auto* levels = app.add_subcommand("levels", "bound-state energy via the unit eigenvalue");
    add_common(levels, o);
    levels->add_option("--k", o.k, "level index")->check(CLI::Range(1, 1000));
    auto* count = app.add_subcommand("count", "count eigenvalues >= 1 at the given energy");
    add_common(count, o);
    auto* sweep = app.add_subcommand("sweep", "smeared-family convergence sweep");
    add_common(sweep, o);
    sweep->add_option("--eps-list", o.eps_list, "strictly decreasing eps values")
        ->delimiter(',');
    auto* klaus = app.add_subcommand("klaus", "parity-sector levels across an eps sweep");
    add_common(klaus, o);
    klaus->add_option("--eps-list", o.eps_list, "strictly decreasing eps values")
        ->delimiter(',');

    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    if (!args.empty() && args.front().rfind("-", 0) != 0) args = expand_config(args);
    std::reverse(args.begin(), args.end());

    try {
        app.parse(std::move(args));
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    if (app.got_subcommand(sweep) || app.got_subcommand(klaus)) {
        if (o.family == "exact") o.family = "softcore";
    }

    try {
        if (app.got_subcommand(verify)) { o.command = "verify"; return run_verify(o); }
        if (app.got_subcommand(hs))     { o.command = "hs-norm"; return run_hs_norm(o); }
        if (app.got_subcommand(eigs))   { o.command = "eigs"; return run_eigs(o); }
        if (app.got_subcommand(levels)) { o.command = "levels"; return run_levels(o); }
        if (app.got_subcommand(count))  { o.command = "count"; return run_count(o); }
        if (app.got_subcommand(sweep))  { o.command = "sweep"; return run_sweeps(o, false); }
        if (app.got_subcommand(klaus))  { o.command = "klaus"; return run_sweeps(o, true); }
    } catch (const std::exception& e) {
        die(2, e.what());
    }
    return 1;
}
