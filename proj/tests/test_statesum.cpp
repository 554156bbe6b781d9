#include <doctest.h>

#include <cmath>

#include "doubletop/statesum.hpp"

using namespace doubletop;

namespace {
const double kPhi = (1 + std::sqrt(5.0)) / 2;

double ss(const std::string& cat, const std::string& tri) {
    cplx z = state_sum(zoo(cat), builtin_triangulation(tri));
    CHECK(std::abs(z.imag()) < 1e-10);
    return z.real();
}
}  // namespace

TEST_CASE("frozen values: S^3 is 1/lambda on every model") {
    for (const auto& t : {"s3", "s3_onetet", "s3_sub"}) {
        CAPTURE(t);
        CHECK(ss("vec_z2", t) == doctest::Approx(0.5).epsilon(1e-12));
        CHECK(ss("vec_z3", t) == doctest::Approx(1.0 / 3).epsilon(1e-12));
        CHECK(ss("fibonacci", t) == doctest::Approx(1 / (1 + kPhi * kPhi)).epsilon(1e-12));
        CHECK(ss("ising", t) == doctest::Approx(0.25).epsilon(1e-12));
    }
}

TEST_CASE("frozen values: S^2 x S^1 and T^3") {
    for (const auto& c : zoo_names()) {
        CAPTURE(c);
        CHECK(ss(c, "s2s1") == doctest::Approx(1.0).epsilon(1e-12));
    }
    CHECK(ss("vec_z2", "t3") == doctest::Approx(4.0));
    CHECK(ss("vec_z3", "t3") == doctest::Approx(9.0));
    CHECK(ss("fibonacci", "t3") == doctest::Approx(4.0));
    CHECK(ss("ising", "t3") == doctest::Approx(9.0));
}

TEST_CASE("frozen values: lens spaces") {
    CHECK(ss("vec_z2", "rp3") == doctest::Approx(1.0));
    CHECK(ss("vec_z2", "rp3_sub") == doctest::Approx(1.0));
    CHECK(ss("vec_z2", "l31") == doctest::Approx(0.5));
    CHECK(ss("vec_z3", "l31") == doctest::Approx(1.0));
    CHECK(ss("vec_z3", "rp3") == doctest::Approx(1.0 / 3));
    CHECK(ss("fibonacci", "rp3") == doctest::Approx(0.7236067977499790));
    CHECK(ss("fibonacci", "l31") == doctest::Approx(0.7236067977499790));
    CHECK(std::abs(ss("fibonacci", "l52")) < 1e-10);
    CHECK(ss("ising", "rp3") == doctest::Approx((2 + std::sqrt(2.0)) / 4));
    CHECK(ss("ising", "l31") == doctest::Approx(0.25));
}

TEST_CASE("group categories agree with the Dijkgraaf-Witten count") {
    for (int n : {2, 3}) {
        auto cat = zoo("vec_z" + std::to_string(n));
        for (const auto& t : builtin_triangulation_names()) {
            CAPTURE(t);
            auto tri = builtin_triangulation(t);
            auto dw = dw_oracle(cyclic_group(n), tri);
            CHECK(std::abs(state_sum(cat, tri) - dw.value()) < 1e-10);
            // |Hom(pi_1, Z/n)| / n
            long long hom = hom_count_cyclic(tri.pi1, n);
            if (hom > 0) CHECK(dw.value() == doctest::Approx(double(hom) / n));
        }
    }
}

TEST_CASE("serial and parallel kernels agree for any worker count") {
    for (const auto& c : {"fibonacci", "ising"}) {
        auto cat = zoo(c);
        for (const auto& t : {"t3", "l52", "s3_sub"}) {
            auto tri = builtin_triangulation(t);
            cplx ref = state_sum_serial(cat, tri);
            for (int w : {1, 2, 3, 7}) {
                CAPTURE(w);
                CHECK(std::abs(state_sum(cat, tri, {w, default_budget}) - ref) < 1e-12);
            }
        }
    }
}

TEST_CASE("budget guard") {
    CHECK_THROWS_AS(state_sum(zoo("ising"), builtin_triangulation("s3"), {1, 100}), BudgetError);
    CHECK_THROWS_AS(coloring_count(3, 40, default_budget), BudgetError);
    CHECK(coloring_count(2, 10, default_budget) == 1024);
}
