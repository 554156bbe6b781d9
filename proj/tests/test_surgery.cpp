#include <doctest.h>

#include <cmath>

#include "doubletop/surgery.hpp"

using namespace doubletop;

namespace {
const std::string kData = DOUBLETOP_DATA_DIR;

const ModularData& md_of(const std::string& name) {
    static std::map<std::string, ModularData> cache;
    auto it = cache.find(name);
    if (it == cache.end()) it = cache.emplace(name, run_pipeline(zoo(name))->md).first;
    return it->second;
}

PlumbingGraph chain(std::vector<int> framings) {
    PlumbingGraph g;
    g.name = "chain";
    for (int i = 0; i < static_cast<int>(framings.size()); ++i) {
        g.vertices.push_back({i, framings[i]});
        if (i > 0) g.edges.push_back({i - 1, i, 1});
    }
    return g;
}

PlumbingGraph mirror(PlumbingGraph g) {
    for (auto& v : g.vertices) v.framing = -v.framing;
    for (auto& e : g.edges) e.sign = -e.sign;
    return g;
}

std::string error_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const std::exception& e) {
        return e.what();
    }
    return "";
}
}  // namespace

TEST_CASE("lens chains") {
    auto frames = [](const PlumbingGraph& g) {
        std::vector<int> f;
        for (const auto& v : g.vertices) f.push_back(v.framing);
        return f;
    };
    CHECK(frames(lens_chain(2, 1)) == std::vector<int>{2});
    CHECK(frames(lens_chain(3, 1)) == std::vector<int>{3});
    CHECK(frames(lens_chain(5, 2)) == std::vector<int>{3, 2});
    CHECK(frames(lens_chain(3, 2)) == std::vector<int>{2, 2});
    CHECK(frames(lens_chain(13, 5)) == std::vector<int>{3, 3, 2});
    CHECK(lens_chain(5, 2).edges.size() == 1);
    CHECK_THROWS_AS(lens_chain(4, 2), PlumbingError);
    CHECK_THROWS_AS(lens_chain(2, 2), PlumbingError);
    CHECK_THROWS_AS(lens_chain(3, 0), PlumbingError);
}

TEST_CASE("linking matrix determinant is the lens order") {
    for (auto [p, q] : std::vector<std::pair<int, int>>{{2, 1}, {5, 2}, {7, 3}, {13, 5}}) {
        auto g = lens_chain(p, q);
        CHECK(std::abs(g.linking_matrix().determinant()) == doctest::Approx(p));
        CHECK(signature(g) == g.size());
    }
    CHECK(signature(load_plumbing(kData + "/plumbing/poincare_e8.json")) == -8);
    CHECK(signature(chain({0})) == 0);
}

TEST_CASE("frozen values") {
    auto Z = [](const char* cat, const PlumbingGraph& g) { return surgery_invariant(md_of(cat), g); };
    CHECK(std::abs(Z("vec_z2", chain({1})) - 0.5) < 1e-12);
    CHECK(std::abs(Z("vec_z2", chain({-1})) - 0.5) < 1e-12);
    CHECK(std::abs(Z("vec_z2", chain({0})) - 1.0) < 1e-12);
    CHECK(std::abs(Z("vec_z2", chain({2})) - 1.0) < 1e-12);
    CHECK(std::abs(Z("vec_z2", chain({2, 2})) - 0.5) < 1e-12);
    CHECK(std::abs(Z("vec_z3", chain({3})) - 1.0) < 1e-12);
    CHECK(std::abs(Z("fibonacci", chain({1})) - 0.2763932022500210) < 1e-12);
    CHECK(std::abs(Z("ising", lens_chain(2, 1)) - (2 + std::sqrt(2.0)) / 4) < 1e-12);
    // Poincare sphere has trivial H_1
    auto e8 = load_plumbing(kData + "/plumbing/poincare_e8.json");
    CHECK(std::abs(Z("vec_z2", e8) - 0.5) < 1e-12);
    CHECK(std::abs(Z("vec_z3", e8) - 1.0 / 3) < 1e-12);
}

TEST_CASE("rt normalization equals the surgery sum") {
    std::mt19937_64 rng(17);
    for (const auto& n : zoo_names()) {
        for (int k = 0; k < 10; ++k) {
            auto g = random_plumbing(rng);
            CHECK(std::abs(rt_invariant(md_of(n), g) - surgery_invariant(md_of(n), g)) < 1e-8);
        }
    }
}

TEST_CASE("ising: |tau|^2 of S^3 is 1/4") {
    auto is = modular_data_from_rsymbols(zoo("ising"));
    CHECK(std::norm(modular_tau(is.S, is.t, chain({1}))) == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("non-unitary S is rejected") {
    Mat S = Mat::Ones(2, 2);
    Vec t = Vec::Ones(2);
    auto msg = error_of([&] { modular_tau(S, t, chain({1})); });
    CHECK(msg.find("not unitary") != std::string::npos);
}

TEST_CASE("graph validation") {
    PlumbingGraph empty;
    CHECK_THROWS_AS(surgery_invariant(md_of("vec_z2"), empty), PlumbingError);
    CHECK_THROWS_AS(plumbing_from_json_text(R"({"vertices":[{"id":0,"framing":1}],"edges":[[0,0]]})"),
                    PlumbingError);
    CHECK_THROWS_AS(plumbing_from_json_text(R"({"vertices":[{"id":0,"framing":1}],"edges":[[0,4]]})"),
                    PlumbingError);
    CHECK_THROWS_AS(builtin_plumbing("nope"), PlumbingError);
    auto tri = load_plumbing(kData + "/plumbing/triangle_cycle.json");
    CHECK(tri.has_cycle());
    CHECK_THROWS_AS(surgery_invariant(md_of("vec_z2"), tri, {0, default_budget, true}), PlumbingError);
    CHECK_NOTHROW(surgery_invariant(md_of("vec_z2"), tri));
}

TEST_CASE("json round trip and multi-edges") {
    auto g = plumbing_from_json_text(R"({"vertices":[{"id":4,"framing":1},{"id":9,"framing":-2}],
                                         "edges":[[4,9],[9,4,-1]]})");
    CHECK(g.size() == 2);
    CHECK(g.edges.size() == 2);
    CHECK(g.has_cycle());
    CHECK(g.linking_matrix()(0, 1) == 0.0);
    auto h = plumbing_from_json_text(plumbing_to_json_text(g));
    CHECK(plumbing_to_json_text(h) == plumbing_to_json_text(g));
}

TEST_CASE("group doubles match the linking-matrix oracle, cycles included") {
    std::mt19937_64 rng(23);
    std::vector<PlumbingGraph> graphs = {load_plumbing(kData + "/plumbing/triangle_cycle.json"),
                                         load_plumbing(kData + "/plumbing/two_components.json")};
    for (int k = 0; k < 10; ++k) graphs.push_back(random_plumbing(rng));
    for (int m = 2; m <= 4; ++m) {
        PlumbingGraph ring;
        for (int i = 0; i < m; ++i) ring.vertices.push_back({i, static_cast<int>(rng() % 7) - 3});
        for (int i = 0; i < m; ++i) ring.edges.push_back({i, (i + 1) % m, rng() % 2 ? 1 : -1});
        graphs.push_back(ring);
    }
    for (int n : {2, 3}) {
        const auto& md = md_of("vec_z" + std::to_string(n));
        for (const auto& g : graphs) CHECK(std::abs(surgery_invariant(md, g) - abelian_oracle(g, n)) < 1e-9);
    }
}

TEST_CASE("blow-up and blow-down") {
    auto g = chain({2, -1, 3});
    auto up = blow_up(g, {BlowUpSite::Edge, 0, -1});
    CHECK(up.size() == 4);
    CHECK(up.vertices[0].framing == 1);
    CHECK(up.vertices[1].framing == -2);
    auto down = blow_down(up, 3);
    CHECK(down.size() == g.size());
    CHECK((down.linking_matrix() - g.linking_matrix()).norm() == 0.0);
    for (const auto& n : zoo_names()) {
        cplx z = surgery_invariant(md_of(n), g);
        for (auto site : {BlowUpSite{BlowUpSite::Isolated, 0, 1}, BlowUpSite{BlowUpSite::Vertex, 1, -1},
                          BlowUpSite{BlowUpSite::Edge, 1, 1}})
            CHECK(std::abs(surgery_invariant(md_of(n), blow_up(g, site)) - z) < 1e-9);
    }
}

TEST_CASE("ineligible blow-down sites") {
    auto g = chain({0, 2});
    auto msg = error_of([&] { blow_down(g, 0); });
    CHECK(msg.find("ineligible site") != std::string::npos);
    PlumbingGraph star = chain({2, 1, 2});
    star.vertices.push_back({3, 2});
    star.edges.push_back({1, 3, 1});
    CHECK_THROWS_AS(blow_down(star, 1), PlumbingError);
    PlumbingGraph dbl = chain({1, 2});
    dbl.edges.push_back({0, 1, 1});
    CHECK_THROWS_AS(blow_down(dbl, 0), PlumbingError);
}

TEST_CASE("framing shift divides each colored term by t") {
    const auto& md = md_of("vec_z3");
    auto g = chain({2, -1});
    auto h = g;
    h.vertices[1].framing += 1;
    for (int i = 0; i < md.rank; ++i)
        for (int j = 0; j < md.rank; ++j) {
            cplx a = colored_invariant(md, g, {i, j});
            cplx b = colored_invariant(md, h, {i, j});
            CHECK(std::abs(b - a / md.t[j]) < 1e-12);
        }
}

TEST_CASE("color conjugation") {
    for (const char* n : {"vec_z3", "ising"}) {
        const auto& md = md_of(n);
        auto g = chain({1, -2, 0});
        g.edges[1].sign = -1;
        for (int i = 0; i < md.rank; ++i)
            for (int j = 0; j < md.rank; ++j)
                for (int k = 0; k < md.rank; ++k) {
                    std::vector<int> col{i, j, k}, bar{md.C[i], md.C[j], md.C[k]};
                    cplx a = colored_invariant(md, g, col);
                    CHECK(std::abs(colored_invariant(md, g, bar) - a) < 1e-12);
                    CHECK(std::abs(colored_invariant(md, mirror(g), bar) - std::conj(a)) < 1e-12);
                }
    }
}

TEST_CASE("serial and parallel enumeration agree") {
    const auto& md = md_of("ising");
    auto g = lens_chain(13, 5);
    cplx ref = surgery_invariant_serial(md, g);
    for (int w : {1, 2, 5}) CHECK(std::abs(surgery_invariant(md, g, {w, default_budget, false}) - ref) < 1e-12);
}

TEST_CASE("budget guard") {
    auto e8 = load_plumbing(kData + "/plumbing/poincare_e8.json");
    CHECK_THROWS_AS(surgery_invariant(md_of("ising"), e8, {0, 1000, false}), BudgetError);
}
