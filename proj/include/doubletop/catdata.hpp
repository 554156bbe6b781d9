#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "doubletop/common.hpp"

namespace doubletop {

struct Label {
    int id = 0;
    std::string name;
};

struct FusionRing {
    int n = 0;
    std::vector<int> dual;
    std::vector<int> N;   // N[(a*n+b)*n+c] = N_{ab}^c

    int mult(int a, int b, int c) const { return N[(a * n + b) * n + c]; }
    int& mult_ref(int a, int b, int c) { return N[(a * n + b) * n + c]; }
    bool multiplicity_free() const;
};

// Key layout: a b c d e f, then basis indices alpha beta gamma delta.
//   alpha: ab->e   beta: ec->d   gamma: bc->f   delta: af->d
using SixJKey = std::array<int, 10>;

class SixJTensor {
public:
    void set(const SixJKey& k, cplx v) { entries_[k] = v; }
    const std::map<SixJKey, cplx>& entries() const { return entries_; }

    // Dense table for multiplicity-free categories; filled by finalize().
    void finalize(const FusionRing& ring);

    cplx get(int a, int b, int c, int d, int e, int f,
             int al = 0, int be = 0, int ga = 0, int de = 0) const;

    // Multiplicity-free fast path, no bounds or admissibility checks.
    cplx fast(int a, int b, int c, int d, int e, int f) const {
        return dense_[idx6(a, b, c, d, e, f)];
    }
    bool has_dense() const { return !dense_.empty(); }

private:
    size_t idx6(int a, int b, int c, int d, int e, int f) const {
        size_t n = static_cast<size_t>(n_);
        return ((((a * n + b) * n + c) * n + d) * n + e) * n + f;
    }
    std::map<SixJKey, cplx> entries_;
    std::vector<cplx> dense_;
    int n_ = 0;
};

struct CategoryData {
    std::string name;
    std::vector<Label> labels;
    FusionRing ring;
    std::vector<double> qdims;
    SixJTensor sixj;
    // R^{ab}_c, multiplicity-free only
    std::optional<std::map<std::array<int, 3>, cplx>> rsymbols;

    int rank() const { return ring.n; }
    int dual(int a) const { return ring.dual[a]; }
    int N(int a, int b, int c) const { return ring.mult(a, b, c); }
    double d(int a) const { return qdims[a]; }
    cplx F(int a, int b, int c, int d, int e, int f,
           int al = 0, int be = 0, int ga = 0, int de = 0) const {
        return sixj.get(a, b, c, d, e, f, al, be, ga, de);
    }
    cplx R(int a, int b, int c) const;
};

struct ValidationReport {
    double pentagon = 0;
    double unitarity = 0;
    double dims = 0;
    std::optional<double> hexagon;
};

double global_dim(const CategoryData& cat);

// Integer-exact checks of the fusion ring; throws CategoryError.
void check_fusion_ring(const FusionRing& ring);
// Shape check: every admissible 6j block is square with the right size.
void check_sixj_shape(const CategoryData& cat);
double dims_residual(const CategoryData& cat);
double validate_pentagon(const CategoryData& cat);
double validate_unitarity(const CategoryData& cat);
// Requires rsymbols; max hexagon residual over both hexagons.
double validate_hexagon(const CategoryData& cat);

// Runs every gate with tolerance tol, throws on the first failure.
ValidationReport validate_category(const CategoryData& cat, double tol = 1e-9);

// Applies unit-gauge defaults and builds lookup tables.
void finalize_category(CategoryData& cat);

CategoryData load_category(const std::string& path);
CategoryData category_from_json_text(const std::string& text);
std::string category_to_json_text(const CategoryData& cat);

CategoryData zoo(const std::string& name);
std::vector<std::string> zoo_names();

}  // namespace doubletop
