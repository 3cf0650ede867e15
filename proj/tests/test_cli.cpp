#include "../tools/output.hpp"

#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>

namespace {

std::string cli_path() {
    const char* p = std::getenv("BSC_CLI_PATH");
    REQUIRE(p != nullptr);
    return p;
}

struct RunResult {
    int exit_code;
    std::string out;
    std::string err;
};

RunResult run(const std::string& args, const std::string& env = "") {
    static int counter = 0;
    const std::string base = "/tmp/bsc_cli_test_" + std::to_string(counter++);
    const std::string out = base + ".out", err = base + ".err";
    const std::string cmd =
        (env.empty() ? "" : env + " ") + cli_path() + " " + args + " >" + out + " 2>" + err;
    const int rc = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = WEXITSTATUS(rc);
    auto slurp = [](const std::string& f) {
        std::ifstream in(f, std::ios::binary);
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    };
    r.out = slurp(out);
    r.err = slurp(err);
    std::remove(out.c_str());
    std::remove(err.c_str());
    return r;
}

double extract_number(const std::string& text, const std::string& key) {
    const auto pos = text.find("\"" + key + "\":");
    REQUIRE(pos != std::string::npos);
    return std::strtod(text.c_str() + pos + key.size() + 3, nullptr);
}

} // namespace

TEST_CASE("usage errors exit with code 1") {
    CHECK(run("--definitely-not-a-flag").exit_code == 1);
    CHECK(run("eigs --abs-e -1").exit_code == 1);
    CHECK(run("eigs --lambda 0").exit_code == 1);
    CHECK(run("nosuchcommand").exit_code == 1);
    CHECK(run("").exit_code == 1); // a subcommand is required
}

TEST_CASE("numerical failure exits with code 2") {
    const auto r = run("eigs --eig-tol -1 --n 64 --k 1");
    CHECK(r.exit_code == 2);
}

TEST_CASE("eigs emits the known top eigenvalue") {
    const auto r = run("eigs --k 3 --n 200");
    CHECK(r.exit_code == 0);
    CHECK(extract_number(r.out, "mu") == doctest::Approx(0.5).epsilon(1e-3));
    CHECK(r.out.find("\"command\": \"eigs\"") != std::string::npos);
}

TEST_CASE("levels solves the ground state") {
    const auto r = run("levels --lambda 2 --k 1 --n 200");
    CHECK(r.exit_code == 0);
    CHECK(extract_number(r.out, "energy") == doctest::Approx(-1.0).epsilon(1e-3));
    CHECK(extract_number(r.out, "mu_at_root") == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("hs-norm reports closed form, numeric and the gap") {
    const auto r = run("hs-norm --domain halfline");
    CHECK(r.exit_code == 0);
    CHECK(extract_number(r.out, "closed_form") == doctest::Approx(0.4112335).epsilon(1e-5));
    CHECK(extract_number(r.out, "numeric") == doctest::Approx(0.4112335).epsilon(1e-5));
    CHECK(extract_number(r.out, "rel_err") < 1e-6);
}

TEST_CASE("count respects the floor formula") {
    const auto r = run("count --lambda 4 --abs-e 1 --n 200");
    CHECK(r.exit_code == 0);
    CHECK(extract_number(r.out, "count") == doctest::Approx(2.0));
}

TEST_CASE("byte-identical output for identical configurations") {
    const std::string args = "sweep --family softcore --eps-list 0.1,0.01 --format csv --n 200";
    const auto a = run(args);
    const auto b = run(args);
    CHECK(a.exit_code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out.find("eps,hs_distance,hs_norm_sq_smeared,young_bound") == 0);

    const auto j1 = run("hs-norm --abs-e 2");
    const auto j2 = run("hs-norm --abs-e 2");
    CHECK(j1.out == j2.out);
}

TEST_CASE("config file provides defaults, flags override") {
    const std::string cfg = "/tmp/bsc_cli_cfg.ini";
    {
        std::ofstream f(cfg);
        f << "lambda = 2\nn = 200\n";
    }
    const auto r = run("eigs --k 1 --config " + cfg);
    CHECK(r.exit_code == 0);
    CHECK(extract_number(r.out, "mu") == doctest::Approx(1.0).epsilon(1e-3)); // lambda 2
    const auto r2 = run("eigs --k 1 --lambda 1 --config " + cfg);
    CHECK(r2.exit_code == 0);
    CHECK(extract_number(r2.out, "mu") == doctest::Approx(0.5).epsilon(1e-3)); // flag wins

    {
        std::ofstream f(cfg);
        f << "not_a_key = 3\n";
    }
    CHECK(run("eigs --config " + cfg).exit_code == 1);
    std::remove(cfg.c_str());
}

TEST_CASE("--out writes stamped and latest files") {
    const std::string dir = "/tmp/bsc_cli_outdir";
    std::filesystem::remove_all(dir);
    const auto r = run("count --lambda 4 --n 200 --out " + dir);
    CHECK(r.exit_code == 0);
    CHECK(std::filesystem::exists(dir + "/count-latest.json"));
    int stamped = 0;
    for (const auto& e : std::filesystem::directory_iterator(dir)) {
        const auto name = e.path().filename().string();
        if (name.rfind("count-", 0) == 0 && name != "count-latest.json") ++stamped;
    }
    CHECK(stamped == 1);
    std::filesystem::remove_all(dir);
}

TEST_CASE("klaus subcommand emits sector levels") {
    const auto r = run("klaus --family softcore --eps-list 0.1,0.01 --n 240");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("level_odd") != std::string::npos);
    CHECK(r.out.find("level_even") != std::string::npos);
}

TEST_CASE("serializer primitives: 17-digit round-trip, empty CSV") {
    for (double v : {0.5, 1.0 / 3.0, 0.41123351671205658, -2.75e-13, 12345.678901234567}) {
        const std::string s = out::format_double(v);
        CHECK(std::strtod(s.c_str(), nullptr) == v);
    }
    out::Csv empty({"a", "b"});
    CHECK(empty.dump() == "a,b\n");

    auto obj = out::Json::object();
    obj.set("x", 0.5).set("s", "hi");
    CHECK(obj.dump(0) == "{\"x\":0.5,\"s\":\"hi\"}\n");
}

TEST_CASE("default output directory comes from the environment") {
    const std::string dir = "/tmp/bsc_cli_envdir";
    std::filesystem::remove_all(dir);
    const auto r = run("count --lambda 4 --n 200", "BS_COULOMB_OUT=" + dir);
    CHECK(r.exit_code == 0);
    CHECK(std::filesystem::exists(dir + "/count-latest.json"));
    std::filesystem::remove_all(dir);
}

TEST_CASE("matrix dump through the CLI") {
    const std::string path = "/tmp/bsc_cli_matrix.txt";
    const auto r = run("eigs --k 1 --n 64 --dump-matrix " + path);
    CHECK(r.exit_code == 0);
    std::ifstream f(path);
    std::string tag;
    int n = 0;
    f >> tag >> n;
    CHECK(tag == "n");
    CHECK(n == 64);
    std::remove(path.c_str());
}
