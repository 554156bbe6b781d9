#include <doctest.h>

#include <algorithm>
#include <random>

#include "doubletop/tube.hpp"

using namespace doubletop;

namespace {
std::vector<int> sorted_dims(const CenterDecomposition& d) {
    auto v = d.block_dims;
    std::sort(v.begin(), v.end());
    return v;
}
}  // namespace

TEST_CASE("tube algebra dimensions and blocks") {
    struct Case {
        const char* name;
        int dim;
        std::vector<int> blocks;
    };
    for (const auto& c : std::vector<Case>{{"vec_z2", 4, {1, 1, 1, 1}},
                                           {"vec_z3", 9, std::vector<int>(9, 1)},
                                           {"fibonacci", 7, {1, 1, 1, 2}},
                                           {"ising", 12, {1, 1, 1, 1, 1, 1, 1, 1, 2}}}) {
        CAPTURE(c.name);
        TubeAlgebra alg(zoo(c.name));
        CHECK(alg.dim() == c.dim);
        auto dec = center_decompose(alg);
        CHECK(sorted_dims(dec) == c.blocks);
        CHECK(dec.vacuum_index == 0);
        CHECK(dec.block_dims[0] == 1);
    }
}

TEST_CASE("C*-algebra checks") {
    for (const auto& n : zoo_names()) {
        CAPTURE(n);
        TubeAlgebra alg(zoo(n));
        auto ck = check_tube_algebra(alg);
        CHECK(ck.associativity < 1e-10);
        CHECK(ck.star_involution < 1e-12);
        CHECK(ck.star_antihom < 1e-10);
        CHECK(ck.unit < 1e-12);
        CHECK(ck.min_gram_eigenvalue > 1e-6);
    }
}

TEST_CASE("central projections are orthogonal, self-adjoint and complete") {
    for (const auto& n : zoo_names()) {
        CAPTURE(n);
        TubeAlgebra alg(zoo(n));
        auto dec = center_decompose(alg);
        CHECK(dec.idempotent_residual < 1e-9);
        CHECK(dec.orthogonality_residual < 1e-9);
        CHECK(dec.sum_residual < 1e-9);
        CHECK(dec.integrality_residual < 1e-9);
        for (int i = 0; i < dec.blocks(); ++i) {
            CHECK((alg.star(dec.projections[i]) - dec.projections[i]).norm() < 1e-9);
            for (int j = 0; j < dec.blocks(); ++j) {
                double want = i == j ? dec.block_dims[i] * dec.block_dims[i] : 0.0;
                CHECK(std::abs(alg.tqft_inner(dec.projections[i], dec.projections[j]) - want) < 1e-8);
            }
        }
    }
}

TEST_CASE("vacuum projector lies in the vacuum block") {
    for (const auto& n : zoo_names()) {
        TubeAlgebra alg(zoo(n));
        auto dec = center_decompose(alg);
        Vec P = vacuum_projector(alg);
        CHECK((alg.multiply(dec.projections[0], P) - P).norm() < 1e-9);
        CHECK(std::abs(dec.vacuum_pairing[0] - 1.0) < 1e-9);
    }
}

TEST_CASE("conditional expectation onto the center") {
    TubeAlgebra alg(zoo("fibonacci"));
    auto dec = center_decompose(alg);
    std::mt19937_64 rng(5);
    std::normal_distribution<double> nd;
    Vec x(alg.dim());
    for (int k = 0; k < alg.dim(); ++k) x[k] = cplx(nd(rng), nd(rng));
    Vec e = conditional_expectation(alg, dec, x);
    // idempotent, central, trace preserving
    CHECK((conditional_expectation(alg, dec, e) - e).norm() < 1e-9);
    for (int k = 0; k < alg.dim(); ++k) {
        Vec u = alg.unit_vector(k);
        CHECK((alg.multiply(u, e) - alg.multiply(e, u)).norm() < 1e-9);
    }
    CHECK(std::abs(alg.regular_trace(e) - alg.regular_trace(x)) < 1e-9);
    // a central element is fixed
    CHECK((conditional_expectation(alg, dec, dec.projections[3]) - dec.projections[3]).norm() < 1e-9);
}

TEST_CASE("different seeds give the same blocks") {
    TubeAlgebra alg(zoo("ising"));
    auto a = center_decompose(alg, 1);
    auto b = center_decompose(alg, 99);
    CHECK(sorted_dims(a) == sorted_dims(b));
    CHECK((a.projections[0] - b.projections[0]).norm() < 1e-9);
}

TEST_CASE("multiplicity categories are out of scope for the tube algebra") {
    auto c = zoo("fibonacci");
    c.ring.N[(1 * 2 + 1) * 2 + 1] = 2;
    CHECK_THROWS(TubeAlgebra{c});
}
