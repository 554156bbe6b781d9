#pragma once

#include <array>
#include <string>
#include <vector>

#include "doubletop/common.hpp"

namespace doubletop {

// Edge slots: 01 02 03 12 13 23. Face slot k is the face opposite corner k.
struct Tetrahedron {
    std::array<int, 4> v{};
    int sign = 1;
    std::array<int, 6> edges{};
    std::array<int, 4> faces{};
};

inline constexpr std::array<std::array<int, 2>, 6> kEdgeCorners{
    {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};

inline int edge_slot(int i, int j) {
    if (i > j) std::swap(i, j);
    static constexpr int table[4][4] = {{-1, 0, 1, 2}, {0, -1, 3, 4}, {1, 3, -1, 5}, {2, 4, 5, -1}};
    return table[i][j];
}

struct Triangulation {
    std::string name;
    int n_vertices = 0;
    std::vector<Tetrahedron> tets;
    int n_edges = 0;
    int n_faces = 0;
    std::string pi1;  // "1", "Z/p", "Z^k"; empty when unknown

    int euler_characteristic() const {
        return n_vertices - n_edges + n_faces - static_cast<int>(tets.size());
    }
};

// Corner triple of face slot k, increasing.
std::array<int, 3> face_corners(int k);

// Fills edge and face ids from vertex ids when the tets do not carry them.
// Requires four distinct vertex ids per tet in that case.
void derive_ids_from_vertices(Triangulation& tri);

// Throws TriangulationError naming the violated invariant.
void validate_triangulation(const Triangulation& tri);

Triangulation load_triangulation(const std::string& path);
Triangulation triangulation_from_json_text(const std::string& text);
std::string triangulation_to_json_text(const Triangulation& tri);

// A face gluing: face slot k1 of tet t1 onto face slot k2 of tet t2,
// matching the remaining corners in increasing order.
struct Gluing {
    int t1, k1, t2, k2;
};

// Builds a Δ-complex from n_tets abstract tets and face gluings. Vertex ids are
// assigned in order of first appearance; orientation signs by propagation.
Triangulation glue_tetrahedra(int n_tets, const std::vector<Gluing>& gluings,
                              const std::string& name, const std::string& pi1);

Triangulation boundary_4simplex();
Triangulation lens_triangulation(int p, int q);
Triangulation s2s1_triangulation();
Triangulation t3_triangulation();
// 1-4 move on tet t; the new vertex gets the largest id.
Triangulation stellar_subdivide(const Triangulation& tri, int t);

Triangulation builtin_triangulation(const std::string& name);
std::vector<std::string> builtin_triangulation_names();

// |Hom(pi1, Z/n)| from the pi1 tag; -1 when the tag is unknown.
long long hom_count_cyclic(const std::string& pi1, int n);

}  // namespace doubletop
