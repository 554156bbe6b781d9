#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "doubletop/modular.hpp"

namespace doubletop {

class PlumbingError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct PlumbingVertex {
    int id = 0;
    int framing = 0;
};

// u, v index into vertices. sign -1 marks a negative clasp.
struct PlumbingEdge {
    int u = 0, v = 0;
    int sign = 1;
};

struct PlumbingGraph {
    std::string name;
    std::vector<PlumbingVertex> vertices;
    std::vector<PlumbingEdge> edges;

    int size() const { return static_cast<int>(vertices.size()); }
    std::vector<int> degrees() const;
    int components() const;
    bool has_cycle() const;
    Eigen::MatrixXd linking_matrix() const;
};

void validate_plumbing(const PlumbingGraph& g);
PlumbingGraph plumbing_from_json_text(const std::string& text);
PlumbingGraph load_plumbing(const std::string& path);
std::string plumbing_to_json_text(const PlumbingGraph& g);
PlumbingGraph builtin_plumbing(const std::string& name);
std::vector<std::string> builtin_plumbing_names();

int signature(const PlumbingGraph& g);
PlumbingGraph lens_chain(int p, int q);

// J(graph; colors) from S and t (t^{-f} per vertex, S^{1-deg} per vertex,
// S per edge, conj(S) for negative edges, S_00^{1-c} overall).
cplx colored_invariant(const Mat& S, const Vec& t, const PlumbingGraph& g, const std::vector<int>& colors);
cplx colored_invariant(const ModularData& md, const PlumbingGraph& g, const std::vector<int>& colors);

struct SurgeryOptions {
    int workers = 0;
    uint64_t budget = default_budget;
    bool strict_trees = false;
};

struct SurgeryResult {
    cplx Z;
    cplx tau;
    int sigma = 0;
    int components = 0;
    uint64_t colorings = 0;
};

// Z = sum over colorings of prod S_{i0} * J; parallel over colorings.
cplx surgery_invariant(const ModularData& md, const PlumbingGraph& g, const SurgeryOptions& opt = {});
cplx surgery_invariant_serial(const ModularData& md, const PlumbingGraph& g, uint64_t budget = default_budget);

// Delta_+^sigma D^{-sigma-m-1} sum prod dim * J/S_00 with D = 1/S_00, no cross-check.
cplx rt_formula(const Mat& S, const Vec& t, const PlumbingGraph& g, const SurgeryOptions& opt = {});

// rt formula on md; throws ToleranceError if it differs from surgery_invariant by 1e-8 or more.
cplx rt_invariant(const ModularData& md, const PlumbingGraph& g, const SurgeryOptions& opt = {});

SurgeryResult evaluate_surgery(const ModularData& md, const PlumbingGraph& g, const SurgeryOptions& opt = {});

struct BlowUpSite {
    enum Kind { Isolated, Vertex, Edge } kind = Isolated;
    int index = 0;  // vertex or edge index
    int eps = 1;    // +1 or -1
};

PlumbingGraph blow_up(const PlumbingGraph& g, const BlowUpSite& site);
PlumbingGraph blow_down(const PlumbingGraph& g, int vertex);

// rt formula with an externally supplied (S, T); rejects non-unitary S.
cplx modular_tau(const Mat& S, const Vec& t, const PlumbingGraph& g);

// |Hom(H_1, Z/n)| / n for the plumbed manifold, H_1 = coker(B) + Z^{b_1(graph)}:
// the value of the Z/n double, also on graphs with cycles.
double abelian_oracle(const PlumbingGraph& g, int n, uint64_t budget = default_budget);

// Forest with up to max_vertices vertices, framings in [lo, hi], occasional negative edges.
PlumbingGraph random_plumbing(std::mt19937_64& rng, int max_vertices = 5, int lo = -3, int hi = 3);
BlowUpSite random_site(std::mt19937_64& rng, const PlumbingGraph& g);

}  // namespace doubletop
