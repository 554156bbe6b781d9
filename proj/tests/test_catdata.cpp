#include <doctest.h>

#include <cmath>

#include "doubletop/catdata.hpp"

using namespace doubletop;

namespace {
const std::string kData = DOUBLETOP_DATA_DIR;
const double kPhi = (1 + std::sqrt(5.0)) / 2;
}

TEST_CASE("zoo categories pass the gate") {
    for (const auto& n : zoo_names()) {
        CAPTURE(n);
        auto rep = validate_category(zoo(n));
        CHECK(rep.pentagon < 1e-9);
        CHECK(rep.unitarity < 1e-9);
        CHECK(rep.dims < 1e-9);
    }
}

TEST_CASE("braided zoo members satisfy the hexagon") {
    for (const auto& n : {"fibonacci", "ising"}) {
        auto rep = validate_category(zoo(n));
        REQUIRE(rep.hexagon.has_value());
        CHECK(*rep.hexagon < 1e-9);
    }
}

TEST_CASE("global dimensions") {
    CHECK(global_dim(zoo("vec_z2")) == doctest::Approx(2.0));
    CHECK(global_dim(zoo("vec_z3")) == doctest::Approx(3.0));
    CHECK(global_dim(zoo("fibonacci")) == doctest::Approx(1 + kPhi * kPhi));
    CHECK(global_dim(zoo("ising")) == doctest::Approx(4.0));
}

TEST_CASE("fibonacci F-matrix") {
    auto c = zoo("fibonacci");
    CHECK(c.F(1, 1, 1, 1, 0, 0).real() == doctest::Approx(1 / kPhi));
    CHECK(c.F(1, 1, 1, 1, 0, 1).real() == doctest::Approx(1 / std::sqrt(kPhi)));
    CHECK(c.F(1, 1, 1, 1, 1, 1).real() == doctest::Approx(-1 / kPhi));
    CHECK(c.d(1) == doctest::Approx(kPhi));
}

TEST_CASE("fibonacci with one sign flipped breaks the pentagon") {
    auto c = category_from_json_text(category_to_json_text(zoo("fibonacci")));
    auto key = SixJKey{1, 1, 1, 1, 1, 1, 0, 0, 0, 0};
    c.sixj.set(key, -c.sixj.get(1, 1, 1, 1, 1, 1));
    c.sixj.finalize(c.ring);
    CHECK(validate_pentagon(c) > 0.1);
    CHECK_THROWS_AS(validate_category(c), CategoryError);
}

TEST_CASE("json round trip preserves the category") {
    for (const auto& n : zoo_names()) {
        auto a = zoo(n);
        auto b = category_from_json_text(category_to_json_text(a));
        CHECK(category_to_json_text(b) == category_to_json_text(a));
        CHECK(validate_category(b).pentagon < 1e-9);
    }
}

TEST_CASE("bundled category files load and validate") {
    for (const auto& n : zoo_names()) {
        auto c = load_category(kData + "/categories/" + n + ".json");
        CHECK(category_to_json_text(c) == category_to_json_text(zoo(n)));
    }
}

TEST_CASE("multiplicity mismatch is rejected") {
    try {
        validate_category(load_category(kData + "/categories/bad_multiplicity.json"));
        FAIL("expected a CategoryError");
    } catch (const CategoryError& e) {
        CHECK(std::string(e.what()).find("multiplicity/F-tensor shape mismatch") != std::string::npos);
    }
}

TEST_CASE("fusion ring errors") {
    auto c = zoo("vec_z2");
    c.ring.N[(1 * 2 + 1) * 2 + 0] = 0;  // 1 x 1 no longer contains the unit
    CHECK_THROWS_AS(check_fusion_ring(c.ring), CategoryError);
    CHECK_THROWS_AS(zoo("no_such_category"), CategoryError);
    CHECK_THROWS(category_from_json_text("{not json"));
}

TEST_CASE("vec_zn range") {
    CHECK(zoo("vec_z5").rank() == 5);
    CHECK(validate_category(zoo("vec_z5")).pentagon < 1e-12);
}
