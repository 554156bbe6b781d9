#include "doubletop/triangulation.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <numeric>
#include <queue>
#include <sstream>

#include <json.hpp>

namespace doubletop {

namespace {

struct UnionFind {
    std::vector<int> p;
    explicit UnionFind(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
    int find(int x) {
        while (p[x] != x) x = p[x] = p[p[x]];
        return x;
    }
    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b) p[std::max(a, b)] = std::min(a, b);
    }
};

std::string tet_ref(int t, int k) {
    return "tet " + std::to_string(t) + " face " + std::to_string(k);
}

}  // namespace

std::array<int, 3> face_corners(int k) {
    static constexpr std::array<std::array<int, 3>, 4> fc{{{1, 2, 3}, {0, 2, 3}, {0, 1, 3}, {0, 1, 2}}};
    return fc[k];
}

void derive_ids_from_vertices(Triangulation& tri) {
    std::map<std::array<int, 2>, int> edges;
    std::map<std::array<int, 3>, int> faces;
    for (size_t t = 0; t < tri.tets.size(); ++t) {
        auto& T = tri.tets[t];
        for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j)
                if (T.v[i] == T.v[j])
                    throw TriangulationError("tet " + std::to_string(t) +
                                             " repeats a vertex; explicit edges/faces are required");
        for (int s = 0; s < 6; ++s) {
            std::array<int, 2> key{T.v[kEdgeCorners[s][0]], T.v[kEdgeCorners[s][1]]};
            auto [it, fresh] = edges.emplace(key, static_cast<int>(edges.size()));
            T.edges[s] = it->second;
        }
        for (int k = 0; k < 4; ++k) {
            auto c = face_corners(k);
            std::array<int, 3> key{T.v[c[0]], T.v[c[1]], T.v[c[2]]};
            auto [it, fresh] = faces.emplace(key, static_cast<int>(faces.size()));
            T.faces[k] = it->second;
        }
    }
    tri.n_edges = static_cast<int>(edges.size());
    tri.n_faces = static_cast<int>(faces.size());
}

void validate_triangulation(const Triangulation& tri) {
    if (tri.tets.empty()) throw TriangulationError("triangulation has no tetrahedra");
    if (tri.n_vertices < 1) throw TriangulationError("triangulation has no vertices");
    std::vector<std::array<int, 2>> edge_ends(tri.n_edges, {-1, -1});
    std::vector<std::vector<std::pair<int, int>>> face_uses(tri.n_faces);
    for (size_t t = 0; t < tri.tets.size(); ++t) {
        const auto& T = tri.tets[t];
        for (int i = 0; i < 4; ++i)
            if (T.v[i] < 0 || T.v[i] >= tri.n_vertices)
                throw TriangulationError("tet " + std::to_string(t) + " has a vertex id out of range");
        for (int i = 0; i < 3; ++i)
            if (T.v[i] > T.v[i + 1])
                throw TriangulationError("tet " + std::to_string(t) +
                                         " lists vertices out of order (no branching)");
        if (T.sign != 1 && T.sign != -1)
            throw TriangulationError("tet " + std::to_string(t) + " has sign other than +-1");
        for (int s = 0; s < 6; ++s) {
            int e = T.edges[s];
            if (e < 0 || e >= tri.n_edges)
                throw TriangulationError("tet " + std::to_string(t) + " has an edge id out of range");
            std::array<int, 2> ends{T.v[kEdgeCorners[s][0]], T.v[kEdgeCorners[s][1]]};
            if (edge_ends[e][0] < 0) edge_ends[e] = ends;
            else if (edge_ends[e] != ends)
                throw TriangulationError("edge " + std::to_string(e) +
                                         " identified with inconsistent endpoints");
        }
        for (int k = 0; k < 4; ++k) {
            int f = T.faces[k];
            if (f < 0 || f >= tri.n_faces)
                throw TriangulationError("tet " + std::to_string(t) + " has a face id out of range");
            face_uses[f].push_back({static_cast<int>(t), k});
        }
    }
    for (int e = 0; e < tri.n_edges; ++e)
        if (edge_ends[e][0] < 0) throw TriangulationError("edge " + std::to_string(e) + " unused");
    // over-glued faces first: they usually leave open faces behind as well
    for (int f = 0; f < tri.n_faces; ++f)
        if (face_uses[f].size() > 2)
            throw TriangulationError("non-manifold gluing: face " + std::to_string(f) + " lies in " +
                                     std::to_string(face_uses[f].size()) + " tetrahedra");
    for (int f = 0; f < tri.n_faces; ++f) {
        const auto& u = face_uses[f];
        if (u.empty()) throw TriangulationError("face " + std::to_string(f) + " unused");
        if (u.size() == 1) throw TriangulationError("open boundary at face " + std::to_string(f));
        auto face_edges = [&](int t, int k) {
            auto c = face_corners(k);
            const auto& T = tri.tets[t];
            return std::array<int, 3>{T.edges[edge_slot(c[0], c[1])], T.edges[edge_slot(c[0], c[2])],
                                      T.edges[edge_slot(c[1], c[2])]};
        };
        auto [t1, k1] = u[0];
        auto [t2, k2] = u[1];
        if (face_edges(t1, k1) != face_edges(t2, k2))
            throw TriangulationError("face " + std::to_string(f) + " glued with mismatched edges (" +
                                     tet_ref(t1, k1) + ", " + tet_ref(t2, k2) + ")");
        int o1 = tri.tets[t1].sign * ((k1 % 2) ? -1 : 1);
        int o2 = tri.tets[t2].sign * ((k2 % 2) ? -1 : 1);
        if (o1 != -o2)
            throw TriangulationError("orientation incoherence at face " + std::to_string(f) + " (" +
                                     tet_ref(t1, k1) + ", " + tet_ref(t2, k2) + ")");
    }
    int chi = tri.euler_characteristic();
    if (chi != 0)
        throw TriangulationError("not a closed 3-manifold: Euler characteristic " + std::to_string(chi));
}

using nlohmann::json;

Triangulation triangulation_from_json_text(const std::string& text) {
    try {
        json j = json::parse(text);
        Triangulation tri;
        tri.name = j.value("name", std::string("custom"));
        tri.n_vertices = j.at("vertices").get<int>();
        tri.pi1 = j.value("pi1", std::string());
        bool has_edges = false, has_faces = false;
        for (const auto& t : j.at("tets")) {
            Tetrahedron T;
            auto v = t.at("v").get<std::vector<int>>();
            if (v.size() != 4) throw TriangulationError("each tet needs 4 vertices");
            std::copy(v.begin(), v.end(), T.v.begin());
            T.sign = t.value("sign", 1);
            if (t.contains("edges")) {
                auto e = t["edges"].get<std::vector<int>>();
                if (e.size() != 6) throw TriangulationError("each tet needs 6 edge ids");
                std::copy(e.begin(), e.end(), T.edges.begin());
                has_edges = true;
            }
            if (t.contains("faces")) {
                auto f = t["faces"].get<std::vector<int>>();
                if (f.size() != 4) throw TriangulationError("each tet needs 4 face ids");
                std::copy(f.begin(), f.end(), T.faces.begin());
                has_faces = true;
            }
            tri.tets.push_back(T);
        }
        if (has_edges != has_faces)
            throw TriangulationError("edges and faces must be given together");
        if (!has_edges) {
            derive_ids_from_vertices(tri);
        } else {
            int me = -1, mf = -1;
            for (const auto& t : j.at("tets")) {
                if (!t.contains("edges") || !t.contains("faces"))
                    throw TriangulationError("edges/faces given for some tets only");
                for (int e : t["edges"]) me = std::max(me, e);
                for (int f : t["faces"]) mf = std::max(mf, f);
            }
            tri.n_edges = me + 1;
            tri.n_faces = mf + 1;
        }
        return tri;
    } catch (const json::exception& e) {
        throw TriangulationError(std::string("parse error: ") + e.what());
    }
}

Triangulation load_triangulation(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw TriangulationError("cannot open triangulation file " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    Triangulation tri = triangulation_from_json_text(ss.str());
    validate_triangulation(tri);
    return tri;
}

std::string triangulation_to_json_text(const Triangulation& tri) {
    json j;
    j["name"] = tri.name;
    j["vertices"] = tri.n_vertices;
    j["tets"] = json::array();
    for (const auto& T : tri.tets)
        j["tets"].push_back({{"v", T.v}, {"sign", T.sign}, {"edges", T.edges}, {"faces", T.faces}});
    if (!tri.pi1.empty()) j["pi1"] = tri.pi1;
    return j.dump(1);
}

Triangulation glue_tetrahedra(int n_tets, const std::vector<Gluing>& gluings,
                              const std::string& name, const std::string& pi1) {
    UnionFind corners(4 * n_tets), edges(6 * n_tets), faces(4 * n_tets);
    std::vector<std::vector<std::array<int, 3>>> adj(n_tets);  // (other tet, k1, k2)
    for (const auto& g : gluings) {
        auto c = face_corners(g.k1), d = face_corners(g.k2);
        for (int m = 0; m < 3; ++m) corners.unite(4 * g.t1 + c[m], 4 * g.t2 + d[m]);
        for (int a = 0; a < 3; ++a)
            for (int b = a + 1; b < 3; ++b)
                edges.unite(6 * g.t1 + edge_slot(c[a], c[b]), 6 * g.t2 + edge_slot(d[a], d[b]));
        faces.unite(4 * g.t1 + g.k1, 4 * g.t2 + g.k2);
        adj[g.t1].push_back({g.t2, g.k1, g.k2});
        adj[g.t2].push_back({g.t1, g.k2, g.k1});
    }
    Triangulation tri;
    tri.name = name;
    tri.pi1 = pi1;
    tri.tets.resize(n_tets);
    std::map<int, int> vid, eid, fid;
    for (int t = 0; t < n_tets; ++t) {
        auto& T = tri.tets[t];
        for (int i = 0; i < 4; ++i)
            T.v[i] = vid.emplace(corners.find(4 * t + i), int(vid.size())).first->second;
        for (int s = 0; s < 6; ++s)
            T.edges[s] = eid.emplace(edges.find(6 * t + s), int(eid.size())).first->second;
        for (int k = 0; k < 4; ++k)
            T.faces[k] = fid.emplace(faces.find(4 * t + k), int(fid.size())).first->second;
    }
    tri.n_vertices = static_cast<int>(vid.size());
    tri.n_edges = static_cast<int>(eid.size());
    tri.n_faces = static_cast<int>(fid.size());

    std::vector<int> sign(n_tets, 0);
    for (int s = 0; s < n_tets; ++s) {
        if (sign[s]) continue;
        sign[s] = 1;
        std::queue<int> q;
        q.push(s);
        while (!q.empty()) {
            int t = q.front();
            q.pop();
            for (auto [u, k1, k2] : adj[t]) {
                int want = -sign[t] * (((k1 + k2) % 2) ? -1 : 1);
                if (!sign[u]) {
                    sign[u] = want;
                    q.push(u);
                } else if (sign[u] != want) {
                    throw TriangulationError("gluing is not orientable");
                }
            }
        }
    }
    for (int t = 0; t < n_tets; ++t) tri.tets[t].sign = sign[t];
    return tri;
}

Triangulation boundary_4simplex() {
    Triangulation tri;
    tri.name = "s3_boundary4simplex";
    tri.n_vertices = 5;
    tri.pi1 = "1";
    for (int i = 0; i < 5; ++i) {
        Tetrahedron T;
        int m = 0;
        for (int v = 0; v < 5; ++v)
            if (v != i) T.v[m++] = v;
        T.sign = (i % 2) ? -1 : 1;
        tri.tets.push_back(T);
    }
    derive_ids_from_vertices(tri);
    return tri;
}

Triangulation lens_triangulation(int p, int q) {
    if (p < 1) throw TriangulationError("lens space needs p >= 1");
    if (p > 1 && (q < 1 || q >= p || std::gcd(p, q) != 1))
        throw TriangulationError("lens space needs 1 <= q < p with gcd(p,q) = 1");
    // tet k has corners (N, S, v_k, v_{k+1}) around the axis NS
    std::vector<Gluing> g;
    for (int k = 0; k < p; ++k) {
        g.push_back({k, 2, (k + 1) % p, 3});
        g.push_back({k, 1, (k + q) % p, 0});
    }
    std::string name = p == 1 ? "s3_onetet" : "lens_" + std::to_string(p) + "_" + std::to_string(q);
    std::string pi1 = p == 1 ? "1" : "Z/" + std::to_string(p);
    return glue_tetrahedra(p, g, name, pi1);
}

Triangulation s2s1_triangulation() {
    // Two prisms (triangle x interval) with lateral faces glued pairwise and
    // top glued to bottom. Tets A,B,C = 0,1,2 and A',B',C' = 3,4,5.
    std::vector<Gluing> g;
    for (int o : {0, 3}) {
        g.push_back({o + 0, 2, o + 1, 2});
        g.push_back({o + 1, 1, o + 2, 1});
        g.push_back({o + 0, 3, o + 2, 0});
    }
    g.push_back({1, 3, 4, 3});
    g.push_back({2, 2, 5, 2});
    g.push_back({0, 0, 3, 0});
    g.push_back({1, 0, 4, 0});
    g.push_back({0, 1, 3, 1});
    g.push_back({2, 3, 5, 3});
    return glue_tetrahedra(6, g, "s2s1", "Z");
}

Triangulation t3_triangulation() {
    // Kuhn subdivision of the cube with opposite sides identified; one tet per
    // permutation of the axes. Edges are named by their displacement vector.
    Triangulation tri;
    tri.name = "t3_sixtet";
    tri.n_vertices = 1;
    tri.pi1 = "Z^3";
    std::array<int, 3> perm{0, 1, 2};
    std::map<std::array<int, 2>, int> faces;
    do {
        std::array<int, 4> pt{0, 0, 0, 7};
        pt[1] = 1 << perm[0];
        pt[2] = pt[1] | (1 << perm[1]);
        int inversions = 0;
        for (int i = 0; i < 3; ++i)
            for (int j = i + 1; j < 3; ++j)
                if (perm[i] > perm[j]) ++inversions;
        Tetrahedron T;
        T.v = {0, 0, 0, 0};
        T.sign = inversions % 2 ? -1 : 1;
        for (int s = 0; s < 6; ++s)
            T.edges[s] = (pt[kEdgeCorners[s][1]] - pt[kEdgeCorners[s][0]]) - 1;
        for (int k = 0; k < 4; ++k) {
            auto c = face_corners(k);
            std::array<int, 2> key{pt[c[1]] - pt[c[0]], pt[c[2]] - pt[c[1]]};
            T.faces[k] = faces.emplace(key, int(faces.size())).first->second;
        }
        tri.tets.push_back(T);
    } while (std::next_permutation(perm.begin(), perm.end()));
    tri.n_edges = 7;
    tri.n_faces = static_cast<int>(faces.size());
    return tri;
}

Triangulation stellar_subdivide(const Triangulation& tri, int t) {
    if (t < 0 || t >= static_cast<int>(tri.tets.size()))
        throw TriangulationError("subdivision target out of range");
    Triangulation out = tri;
    out.name = tri.name + "_sub";
    const Tetrahedron old = tri.tets[t];
    const int c = tri.n_vertices;
    out.n_vertices = tri.n_vertices + 1;
    out.tets.erase(out.tets.begin() + t);
    const int e0 = tri.n_edges;   // new edge from corner i: e0 + i
    const int f0 = tri.n_faces;   // new face through old edge slot s: f0 + s
    out.n_edges = tri.n_edges + 4;
    out.n_faces = tri.n_faces + 6;
    for (int k = 0; k < 4; ++k) {
        std::array<int, 4> L{};  // old corners in new-tet order, -1 for the new vertex
        int m = 0;
        for (int j = 0; j < 4; ++j)
            if (j != k) L[m++] = j;
        L[3] = -1;
        Tetrahedron T;
        for (int i = 0; i < 4; ++i) T.v[i] = L[i] < 0 ? c : old.v[L[i]];
        T.sign = old.sign * (((3 - k) % 2) ? -1 : 1);
        for (int s = 0; s < 6; ++s) {
            int x = L[kEdgeCorners[s][0]], y = L[kEdgeCorners[s][1]];
            T.edges[s] = y < 0 ? e0 + x : old.edges[edge_slot(x, y)];
        }
        for (int i = 0; i < 4; ++i) {
            if (i == 3) {
                T.faces[i] = old.faces[k];
                continue;
            }
            int a = -1, b = -1;
            for (int j = 0; j < 3; ++j)
                if (j != i) (a < 0 ? a : b) = L[j];
            T.faces[i] = f0 + edge_slot(a, b);
        }
        out.tets.push_back(T);
    }
    return out;
}

std::vector<std::string> builtin_triangulation_names() {
    return {"s3", "s3_onetet", "s3_sub", "rp3", "rp3_sub", "l31", "l32", "l41", "l52", "s2s1", "t3"};
}

Triangulation builtin_triangulation(const std::string& name) {
    if (name == "s3" || name == "s3_boundary4simplex") return boundary_4simplex();
    if (name == "s3_onetet") return lens_triangulation(1, 0);
    if (name == "s3_sub") return stellar_subdivide(lens_triangulation(1, 0), 0);
    if (name == "rp3" || name == "l21") return lens_triangulation(2, 1);
    if (name == "rp3_sub") return stellar_subdivide(lens_triangulation(2, 1), 0);
    if (name == "l31") return lens_triangulation(3, 1);
    if (name == "l32") return lens_triangulation(3, 2);
    if (name == "l41") return lens_triangulation(4, 1);
    if (name == "l52") return lens_triangulation(5, 2);
    if (name == "s2s1") return s2s1_triangulation();
    if (name == "t3" || name == "t3_sixtet") return t3_triangulation();
    int p = 0, q = 0;
    char tail = 0;
    if (std::sscanf(name.c_str(), "lens_%d_%d%c", &p, &q, &tail) == 2) return lens_triangulation(p, q);
    throw TriangulationError("unknown builtin triangulation '" + name + "'");
}

long long hom_count_cyclic(const std::string& pi1, int n) {
    if (pi1 == "1") return 1;
    if (pi1 == "Z") return n;
    if (pi1.rfind("Z/", 0) == 0) return std::gcd(std::stoi(pi1.substr(2)), n);
    if (pi1.rfind("Z^", 0) == 0) {
        long long r = 1;
        for (int i = 0, k = std::stoi(pi1.substr(2)); i < k; ++i) r *= n;
        return r;
    }
    return -1;
}

}  // namespace doubletop
