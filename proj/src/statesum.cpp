#include "doubletop/statesum.hpp"

#include <cmath>

#include <omp.h>

namespace doubletop {

namespace {

// Face slot k of a tet as (first, second, third) edge slots: N_{first,second}^{third}.
constexpr int kFaceEdges[4][3] = {{3, 5, 4}, {1, 5, 2}, {0, 4, 2}, {0, 3, 1}};

struct Prepared {
    const CategoryData& cat;
    const Triangulation& tri;
    int n;
    bool mfree;
    std::vector<double> inv_sqrt_d;
    // per face: representative (tet, slot)
    std::vector<std::pair<int, int>> face_rep;
    double norm;

    Prepared(const CategoryData& c, const Triangulation& t)
        : cat(c), tri(t), n(c.rank()), mfree(c.ring.multiplicity_free() && c.sixj.has_dense()) {
        for (int a = 0; a < n; ++a) inv_sqrt_d.push_back(1.0 / std::sqrt(c.d(a)));
        face_rep.assign(t.n_faces, {-1, -1});
        for (size_t i = 0; i < t.tets.size(); ++i)
            for (int k = 0; k < 4; ++k)
                if (face_rep[t.tets[i].faces[k]].first < 0) face_rep[t.tets[i].faces[k]] = {int(i), k};
        norm = std::pow(global_dim(c), -t.n_vertices);
    }

    int face_mult(const std::vector<int>& col, int f) const {
        auto [t, k] = face_rep[f];
        const auto& T = tri.tets[t];
        return cat.N(col[T.edges[kFaceEdges[k][0]]], col[T.edges[kFaceEdges[k][1]]],
                     col[T.edges[kFaceEdges[k][2]]]);
    }

    // Contribution of one edge coloring, without the lambda^-a factor.
    cplx term(const std::vector<int>& col) const {
        if (mfree) {
            cplx prod = 1.0;
            for (const auto& T : tri.tets) {
                int g01 = col[T.edges[0]], g02 = col[T.edges[1]], g03 = col[T.edges[2]];
                int g12 = col[T.edges[3]], g13 = col[T.edges[4]], g23 = col[T.edges[5]];
                if (!cat.N(g01, g12, g02) || !cat.N(g02, g23, g03) || !cat.N(g12, g23, g13) ||
                    !cat.N(g01, g13, g03))
                    return 0.0;
                cplx w = cat.sixj.fast(g01, g12, g23, g03, g02, g13) * (inv_sqrt_d[g02] * inv_sqrt_d[g13]);
                prod *= T.sign < 0 ? std::conj(w) : w;
            }
            double dprod = 1.0;
            for (int c : col) dprod *= cat.d(c);
            return prod * dprod;
        }
        std::vector<int> range(tri.n_faces);
        for (int f = 0; f < tri.n_faces; ++f) {
            range[f] = face_mult(col, f);
            if (range[f] == 0) return 0.0;
        }
        std::vector<int> lab(tri.n_faces, 0);
        KahanSum acc;
        std::array<int, 6> tc;
        while (true) {
            cplx prod = 1.0;
            for (const auto& T : tri.tets) {
                for (int s = 0; s < 6; ++s) tc[s] = col[T.edges[s]];
                prod *= tet_weight(cat, T, tc,
                                   {lab[T.faces[3]], lab[T.faces[1]], lab[T.faces[0]], lab[T.faces[2]]});
            }
            acc.add(prod);
            int f = tri.n_faces - 1;
            while (f >= 0 && ++lab[f] == range[f]) lab[f--] = 0;
            if (f < 0) break;
        }
        double dprod = 1.0;
        for (int c : col) dprod *= cat.d(c);
        return acc.sum * dprod;
    }
};

void decode(uint64_t idx, int n, std::vector<int>& col) {
    for (int e = static_cast<int>(col.size()) - 1; e >= 0; --e) {
        col[e] = static_cast<int>(idx % n);
        idx /= n;
    }
}

void advance(int n, std::vector<int>& col) {
    int e = static_cast<int>(col.size()) - 1;
    while (e >= 0 && ++col[e] == n) col[e--] = 0;
}

}  // namespace

cplx tet_weight(const CategoryData& cat, const Tetrahedron& tet, const std::array<int, 6>& c,
                const std::array<int, 4>& b) {
    int g01 = c[0], g02 = c[1], g03 = c[2], g12 = c[3], g13 = c[4], g23 = c[5];
    int m012 = cat.N(g01, g12, g02), m023 = cat.N(g02, g23, g03), m123 = cat.N(g12, g23, g13),
        m013 = cat.N(g01, g13, g03);
    if (b[0] < 0 || b[0] >= m012 || b[1] < 0 || b[1] >= m023 || b[2] < 0 || b[2] >= m123 ||
        b[3] < 0 || b[3] >= m013)
        return 0.0;
    cplx w = cat.F(g01, g12, g23, g03, g02, g13, b[0], b[1], b[2], b[3]) /
             std::sqrt(cat.d(g02) * cat.d(g13));
    return tet.sign < 0 ? std::conj(w) : w;
}

uint64_t coloring_count(int n_labels, int n_edges, uint64_t budget) {
    uint64_t total = 1;
    for (int e = 0; e < n_edges; ++e) {
        if (total > budget / static_cast<uint64_t>(n_labels))
            throw BudgetError("enumeration of " + std::to_string(n_labels) + "^" +
                              std::to_string(n_edges) + " colorings exceeds budget " +
                              std::to_string(budget));
        total *= static_cast<uint64_t>(n_labels);
    }
    return total;
}

cplx state_sum_serial(const CategoryData& cat, const Triangulation& tri, uint64_t budget) {
    uint64_t total = coloring_count(cat.rank(), tri.n_edges, budget);
    Prepared P(cat, tri);
    std::vector<int> col(tri.n_edges, 0);
    KahanSum acc;
    for (uint64_t i = 0; i < total; ++i) {
        acc.add(P.term(col));
        advance(P.n, col);
    }
    return acc.sum * P.norm;
}

cplx state_sum(const CategoryData& cat, const Triangulation& tri, const StateSumOptions& opt) {
    uint64_t total = coloring_count(cat.rank(), tri.n_edges, opt.budget);
    Prepared P(cat, tri);
    int W = opt.workers > 0 ? opt.workers : omp_get_max_threads();
    if (static_cast<uint64_t>(W) > total) W = static_cast<int>(total);
    std::vector<cplx> partial(W);
#pragma omp parallel for num_threads(W) schedule(static, 1)
    for (int w = 0; w < W; ++w) {
        uint64_t lo = total / W * w + std::min<uint64_t>(w, total % W);
        uint64_t hi = lo + total / W + (static_cast<uint64_t>(w) < total % W ? 1 : 0);
        std::vector<int> col(tri.n_edges);
        decode(lo, P.n, col);
        KahanSum acc;
        for (uint64_t i = lo; i < hi; ++i) {
            acc.add(P.term(col));
            advance(P.n, col);
        }
        partial[w] = acc.sum;
    }
    KahanSum acc;
    for (int w = 0; w < W; ++w) acc.add(partial[w]);
    return acc.sum * P.norm;
}

GroupTable cyclic_group(int n) {
    GroupTable G(n, std::vector<int>(n));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) G[a][b] = (a + b) % n;
    return G;
}

DWResult dw_oracle(const GroupTable& G, const Triangulation& tri, uint64_t budget) {
    int g = static_cast<int>(G.size());
    uint64_t total = coloring_count(g, tri.n_edges, budget);
    // one (tet, slot) per face is enough
    std::vector<std::array<int, 3>> checks;
    std::vector<char> seen(tri.n_faces, 0);
    for (const auto& T : tri.tets)
        for (int k = 0; k < 4; ++k) {
            if (seen[T.faces[k]]) continue;
            seen[T.faces[k]] = 1;
            checks.push_back({T.edges[kFaceEdges[k][0]], T.edges[kFaceEdges[k][1]],
                              T.edges[kFaceEdges[k][2]]});
        }
    DWResult r;
    std::vector<int> col(tri.n_edges, 0);
    for (uint64_t i = 0; i < total; ++i) {
        bool flat = true;
        for (const auto& c : checks)
            if (G[col[c[0]]][col[c[1]]] != col[c[2]]) {
                flat = false;
                break;
            }
        if (flat) ++r.count;
        advance(g, col);
    }
    for (int v = 0; v < tri.n_vertices; ++v) r.denominator *= static_cast<uint64_t>(g);
    return r;
}

}  // namespace doubletop
