#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "doubletop/tube.hpp"

namespace doubletop {

// Half-braiding of one tube block. Row basis of e[(zeta,delta)] is (a, alpha)
// with a in the zeta-channel delta of a.zeta, columns (b, beta) for zeta.b.
struct HalfBraiding {
    int block = 0;
    std::vector<int> mult;   // multiplicity of each label in the underlying object
    int corner = 0;          // grade of the chosen minimal projection
    struct Piece {
        std::vector<std::pair<int, int>> rows, cols;
        Mat e;
    };
    std::map<std::pair<int, int>, Piece> pieces;
    double unitarity_residual = 0;
    double representation_residual = 0;

    // sum_alpha e^{zeta delta}_{a alpha, a alpha}
    cplx diag_trace(int zeta, int delta, int a) const;
    // e(zeta) assembled block-diagonally over delta
    Mat e_of(int zeta) const;
};

std::vector<HalfBraiding> extract_half_braidings(const TubeAlgebra& alg, const CenterDecomposition& dec,
                                                 uint64_t seed = kDefaultSeed);

struct TwistResult {
    Vec t;
    double diagonal_residual = 0;   // R pi_i vs scalar multiple
    double unitary_residual = 0;    // R R* = 1
    double agreement_residual = 0;  // half-braiding twist vs Dehn twist
    double relation_residual = 0;   // T(X) T*(Y) = XY on samples
};

TwistResult compute_T(const TubeAlgebra& alg, const CenterDecomposition& dec,
                      const std::vector<HalfBraiding>& hb);

struct Residuals {
    std::map<std::string, double> values;
    double& operator[](const std::string& k) { return values[k]; }
    double get(const std::string& k) const {
        auto it = values.find(k);
        return it == values.end() ? 0.0 : it->second;
    }
};

struct ModularData {
    int rank = 0;
    Mat S;
    Vec t;
    std::vector<int> N;  // N[(i*r+j)*r+k]
    std::vector<int> C;
    cplx gauss_plus, gauss_minus;
    double D = 0;
    double lambda = 0;
    std::vector<double> qdim;
    Residuals residuals;

    int fusion(int i, int j, int k) const { return N[(i * rank + j) * rank + k]; }
};

struct FusionResult {
    std::vector<int> N;
    double max_rounding = 0;
};

FusionResult verlinde_fusion(const Mat& S);
FusionResult pants_dims(const TubeAlgebra& alg, const CenterDecomposition& dec);

// max |p_i* - p_i|
double check_U_condition(const TubeAlgebra& alg, const CenterDecomposition& dec);

// S from the half-braiding Hopf trace; fills every ModularData field and the
// axiom residuals. Throws ToleranceError when an axiom fails beyond tolerance.
ModularData compute_S(const TubeAlgebra& alg, const CenterDecomposition& dec,
                      const std::vector<HalfBraiding>& hb, const TwistResult& tw);

// Gauss sums, charge conjugation, Verlinde fusion and axiom residuals from S, t.
void complete_modular_data(ModularData& md);
// Throws ToleranceError naming the first failed axiom.
void assert_verlinde_axioms(const ModularData& md, double tol = 1e-8, double int_tol = 1e-6);

// Everything derived from one category. Blocks are in canonical order:
// vacuum first, then by (qdim, twist phase, sorted S-row).
struct Pipeline {
    std::unique_ptr<CategoryData> cat;
    std::unique_ptr<TubeAlgebra> alg;
    CenterDecomposition dec;
    std::vector<HalfBraiding> hb;
    TwistResult twist;
    ModularData md;
    FusionResult pants;
};

std::unique_ptr<Pipeline> run_pipeline(const CategoryData& cat, uint64_t seed = kDefaultSeed);

// Closed-form modular data of the double of Z/n, labels (g, chi) -> g*n + chi.
ModularData group_double_oracle(int n);

// S and twists of a braided category from its R-symbols.
ModularData modular_data_from_rsymbols(const CategoryData& cat);

// Simultaneous permutation (vacuum fixed) carrying a onto b; empty if none.
std::vector<int> match_permutation(const ModularData& a, const ModularData& b, double tol = 1e-8);

}  // namespace doubletop
