#include <doctest.h>

#include "doubletop/triangulation.hpp"

using namespace doubletop;

namespace {
const std::string kData = DOUBLETOP_DATA_DIR;

std::string error_of(const std::string& text) {
    try {
        validate_triangulation(triangulation_from_json_text(text));
    } catch (const TriangulationError& e) {
        return e.what();
    }
    return "";
}
}  // namespace

TEST_CASE("builtin triangulations are closed oriented manifolds") {
    for (const auto& n : builtin_triangulation_names()) {
        CAPTURE(n);
        CHECK_NOTHROW(validate_triangulation(builtin_triangulation(n)));
    }
}

TEST_CASE("boundary of the 4-simplex") {
    auto t = boundary_4simplex();
    CHECK(t.tets.size() == 5);
    CHECK(t.n_vertices == 5);
    CHECK(t.n_edges == 10);
    CHECK(t.n_faces == 10);
}

TEST_CASE("lens space complexes") {
    auto t = lens_triangulation(5, 2);
    CHECK(t.tets.size() == 5);
    CHECK(t.pi1 == "Z/5");
    CHECK_THROWS_AS(lens_triangulation(4, 2), TriangulationError);
}

TEST_CASE("stellar subdivision adds three tets") {
    auto t = stellar_subdivide(boundary_4simplex(), 0);
    CHECK(t.tets.size() == 8);
    CHECK(t.n_vertices == 6);
    CHECK_NOTHROW(validate_triangulation(t));
}

TEST_CASE("json round trip") {
    for (const auto& n : {"s3", "rp3", "t3", "s2s1", "l52"}) {
        auto a = builtin_triangulation(n);
        auto b = triangulation_from_json_text(triangulation_to_json_text(a));
        CHECK(triangulation_to_json_text(b) == triangulation_to_json_text(a));
    }
    CHECK_NOTHROW(validate_triangulation(load_triangulation(kData + "/triangulations/t3_sixtet.json")));
}

TEST_CASE("a triangle shared by three tets is non-manifold") {
    auto msg = error_of(R"({"vertices":6,"tets":[{"v":[0,1,2,3]},{"v":[0,1,2,4]},{"v":[0,1,2,5]}]})");
    CHECK(msg.find("non-manifold") != std::string::npos);
}

TEST_CASE("a single tet has open boundary") {
    auto msg = error_of(R"({"vertices":4,"tets":[{"v":[0,1,2,3]}]})");
    CHECK(msg.find("open boundary") != std::string::npos);
}

TEST_CASE("tets need increasing vertex order") {
    auto msg = error_of(R"({"vertices":4,"tets":[{"v":[1,0,2,3]}]})");
    CHECK(!msg.empty());
}

TEST_CASE("cyclic hom counts") {
    CHECK(hom_count_cyclic("1", 3) == 1);
    CHECK(hom_count_cyclic("Z/2", 2) == 2);
    CHECK(hom_count_cyclic("Z/2", 3) == 1);
    CHECK(hom_count_cyclic("Z", 3) == 3);
    CHECK(hom_count_cyclic("Z^3", 2) == 8);
}
