#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include <cuspq/cli.hpp>

namespace {

struct Out {
    int rc;
    std::string out, err;
};

Out run(std::vector<std::string> args) {
    args.insert(args.begin(), "cuspq");
    std::vector<const char*> argv;
    for (auto& a : args) argv.push_back(a.c_str());
    std::ostringstream o, e;
    int rc = cuspq::cli::run(static_cast<int>(argv.size()), argv.data(), o, e);
    return {rc, o.str(), e.str()};
}

const std::string kData = CUSPQ_TEST_DATA;

}  // namespace

TEST_CASE("trace of lambda_b") {
    auto r = run({"trace", "--surface", "quad014", "--word", "K X(pi2) R X(pi1)", "--mode", "quantum"});
    CHECK(r.rc == 0);
    CHECK(r.out == "1 exp((1*pi1 + 1*pi2)/2)\n");
    auto raw = run({"--mode", "quantum", "trace", "--surface", "quad014", "--word", "K X(pi2) R X(pi1)", "--raw"});
    CHECK(raw.out == "1 q^{-2/4} exp((1*pi1 + 1*pi2)/2)\n");
}

TEST_CASE("lines format") {
    auto r = run({"--format", "lines", "trace", "--surface", "s111", "--word", "L X(Z4) R X(Z3)"});
    CHECK(r.rc == 0);
    CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 3);
}

TEST_CASE("validate") {
    CHECK(run({"validate", "--surface", "tri023"}).rc == 0);
    CHECK(run({"validate", "--surface", kData + "/orbifold.fg"}).rc == 0);
    auto bad = run({"validate", "--surface", kData + "/bad.fg"});
    CHECK(bad.rc == 2);
    CHECK(bad.err.find("line 3") != std::string::npos);
    CHECK(run({"validate", "--surface", kData + "/nothing.fg"}).rc == 2);
}

TEST_CASE("bracket and commute") {
    auto b = run({"bracket", "--surface", "torus11", "--word", "L X(Z2) R X(Z3)", "--with", "L X(Z1) R X(Z2)"});
    CHECK(b.rc == 0);
    CHECK(!b.out.empty());
    auto c = run({"commute", "--surface", "quad014", "--word", "K X(pi2) R X(pi1)", "--with", "K X(pi3) R X(pi2)"});
    CHECK(c.rc == 0);
    CHECK(c.out == "q^{2/4}\n");
    auto h = run({"commute", "--surface", "tri023", "--seed"});
    CHECK(h.rc == 0);
    CHECK(h.out.find("pair <0,1> I=1 status=pass") != std::string::npos);
    CHECK(run({"commute", "--surface", "tri023"}).rc == 2);
}

TEST_CASE("flip") {
    auto r = run({"flip", "--surface", "s111", "--edge", "Z1", "--check"});
    CHECK(r.rc == 0);
    CHECK(r.out.find("FAIL") == std::string::npos);
    auto p = run({"flip", "--surface", "tri023", "--edge", "Z1", "--print-surface"});
    CHECK(p.out.find("loop flip Z1") == 0);
    CHECK(p.out.find("surface g=0 s_h=2 s_o=0 n=3") != std::string::npos);
    CHECK(run({"flip", "--surface", "quad014", "--edge", "pi1"}).rc == 2);
    CHECK(run({"flip", "--surface", "quad014", "--edge", "nope"}).rc == 2);
}

TEST_CASE("mutate") {
    auto r = run({"mutate", "--surface", "quad014", "--arc", "le", "--name", "lf"});
    CHECK(r.rc == 0);
    CHECK(r.out.find("lf in shear = 1 exp((1*pi1 + 1*pi3 - 1*Z)/2) + 1 exp((1*pi1 + 1*pi3 + 1*Z)/2)") !=
          std::string::npos);
    CHECK(r.out.find("homogeneous pass") != std::string::npos);
    auto two = run({"mutate", "--surface", "tri023", "--arc", "t11", "--name", "t33", "--arc", "t13", "--name", "t23"});
    CHECK(two.rc == 0);
    CHECK(run({"mutate", "--surface", "quad014", "--arc", "la"}).rc == 2);
}

TEST_CASE("tropical") {
    auto r = run({"tropical", "--surface", "quad014", "--arc", "le", "--lengths", "la=3,lb=1,lc=2,ld=6,le=4",
                  "--scale", "50"});
    CHECK(r.rc == 0);
    CHECK(r.out.find("le' = 3\n") == 0);
    CHECK(run({"tropical", "--surface", "quad014", "--arc", "le", "--lengths", "la=x"}).rc == 2);
}

TEST_CASE("suite") {
    auto r = run({"suite", "s111"});
    CHECK(r.rc == 0);
    CHECK(r.out.find("FAIL") == std::string::npos);
    CHECK(r.out.find("casimirs") != std::string::npos);
    CHECK(run({"suite", "tropical"}).rc == 0);
    CHECK(run({"suite", "nope"}).rc == 2);
}

TEST_CASE("argument errors") {
    CHECK(run({}).rc == 2);
    CHECK(run({"bogus"}).rc == 2);
    CHECK(run({"--mode", "other", "trace", "--surface", "s111", "--word", "L X(Z1)"}).rc == 2);
    CHECK(run({"trace", "--surface", "s111", "--word", "L X(Z9)"}).rc == 2);
    CHECK(run({"--help"}).rc == 0);
}

TEST_CASE("output is deterministic") {
    auto a = run({"--rng-seed", "7", "flip", "--surface", "tri023", "--edge", "Z2", "--check"});
    auto b = run({"--rng-seed", "7", "flip", "--surface", "tri023", "--edge", "Z2", "--check"});
    CHECK(a.out == b.out);
    CHECK(a.rc == 0);
}
