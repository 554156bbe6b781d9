#include <doctest.h>

#include <cmath>

#include "doubletop/modular.hpp"

using namespace doubletop;

namespace {
const double kPi = 3.14159265358979323846;
const double kPhi = (1 + std::sqrt(5.0)) / 2;

bool contains_phase(const Vec& t, cplx z) {
    for (int i = 0; i < t.size(); ++i)
        if (std::abs(t[i] - z) < 1e-9) return true;
    return false;
}
}  // namespace

TEST_CASE("verlinde basis axioms on every zoo category") {
    for (const auto& n : zoo_names()) {
        CAPTURE(n);
        auto p = run_pipeline(zoo(n));
        CHECK_NOTHROW(assert_verlinde_axioms(p->md));
        CHECK(p->md.residuals.get("s_unitary") < 1e-10);
        CHECK(p->md.residuals.get("st3") < 1e-10);
        CHECK(p->md.residuals.get("half_braiding_unitarity") < 1e-10);
        CHECK(std::abs(p->md.t[0] - 1.0) < 1e-12);
        CHECK(p->md.S(0, 0).real() == doctest::Approx(1.0 / p->md.lambda));
    }
}

TEST_CASE("pants dimensions equal Verlinde fusion") {
    for (const auto& n : zoo_names()) {
        auto p = run_pipeline(zoo(n));
        CHECK(pants_dims(*p->alg, p->dec).N == verlinde_fusion(p->md.S).N);
    }
}

TEST_CASE("group doubles match the closed form") {
    for (int n : {2, 3}) {
        auto p = run_pipeline(zoo("vec_z" + std::to_string(n)));
        CHECK(!match_permutation(p->md, group_double_oracle(n)).empty());
    }
    // a perturbed oracle must not match
    auto p = run_pipeline(zoo("vec_z2"));
    auto bad = group_double_oracle(2);
    bad.t[1] *= cplx(0, 1);
    CHECK(match_permutation(p->md, bad).empty());
}

TEST_CASE("fibonacci double: dimensions and twists") {
    auto md = run_pipeline(zoo("fibonacci"))->md;
    REQUIRE(md.rank == 4);
    std::vector<double> q = md.qdim;
    std::sort(q.begin(), q.end());
    CHECK(q[0] == doctest::Approx(1.0));
    CHECK(q[1] == doctest::Approx(kPhi));
    CHECK(q[2] == doctest::Approx(kPhi));
    CHECK(q[3] == doctest::Approx(kPhi * kPhi));
    CHECK(md.lambda == doctest::Approx(1 + kPhi * kPhi));
    // tau x tau-bar style twists e^{+-4 pi i/5}
    CHECK(contains_phase(md.t, std::polar(1.0, 4 * kPi / 5)));
    CHECK(contains_phase(md.t, std::polar(1.0, -4 * kPi / 5)));
}

TEST_CASE("ising double contains the e^{+-i pi/8} combinations") {
    auto md = run_pipeline(zoo("ising"))->md;
    CHECK(md.rank == 9);
    CHECK(contains_phase(md.t, std::polar(1.0, kPi / 8)));
    CHECK(contains_phase(md.t, std::polar(1.0, -kPi / 8)));
    CHECK(contains_phase(md.t, cplx(-1, 0)));
}

TEST_CASE("charge conjugation of the Z/3 double is non-trivial") {
    auto md = run_pipeline(zoo("vec_z3"))->md;
    int moved = 0;
    for (int i = 0; i < md.rank; ++i) moved += md.C[i] != i;
    CHECK(moved == 8);
    CHECK(md.C[0] == 0);
}

TEST_CASE("braided data from R-symbols") {
    auto ising = modular_data_from_rsymbols(zoo("ising"));
    CHECK(ising.rank == 3);
    CHECK(std::abs(ising.S(0, 0) - 0.5) < 1e-12);
    CHECK(contains_phase(ising.t, std::polar(1.0, kPi / 8)));
    CHECK(contains_phase(ising.t, cplx(-1, 0)));
    auto fib = modular_data_from_rsymbols(zoo("fibonacci"));
    CHECK(contains_phase(fib.t, std::polar(1.0, 4 * kPi / 5)));
}

TEST_CASE("verlinde formula on a known S") {
    auto md = group_double_oracle(2);
    auto f = verlinde_fusion(md.S);
    CHECK(f.max_rounding < 1e-12);
    for (int j = 0; j < 4; ++j)
        for (int k = 0; k < 4; ++k) CHECK(f.N[(0 * 4 + j) * 4 + k] == (j == k ? 1 : 0));
}

TEST_CASE("axiom checker rejects broken data") {
    auto md = group_double_oracle(3);
    md.t[4] = 1.0;  // label (1,1), twist e^{2 pi i/3} in the closed form
    complete_modular_data(md);
    CHECK_THROWS_AS(assert_verlinde_axioms(md), ToleranceError);
}
