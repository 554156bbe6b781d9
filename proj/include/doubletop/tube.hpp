#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include <Eigen/Dense>

#include "doubletop/catdata.hpp"

namespace doubletop {

using Vec = Eigen::VectorXcd;
using Mat = Eigen::MatrixXcd;

// Basis element v^{zeta eta}_delta (v^{xi zeta}_delta)^dagger : xi zeta -> zeta eta.
// Only multiplicity-free categories are supported, so a1 = a2 = 0 always.
struct TubeBasisElement {
    int xi, eta, zeta, delta;
    int a1 = 0, a2 = 0;
};

class TubeAlgebra {
public:
    explicit TubeAlgebra(const CategoryData& cat);

    const CategoryData& category() const { return cat_; }
    int dim() const { return static_cast<int>(basis_.size()); }
    const std::vector<TubeBasisElement>& basis() const { return basis_; }
    // -1 when (xi,eta,zeta,delta) is not a basis element
    int index(int xi, int eta, int zeta, int delta) const;

    // b_k * b_j as a sparse list
    const std::vector<std::pair<int, cplx>>& product(int k, int j) const {
        return prod_[static_cast<size_t>(k) * dim() + j];
    }
    Vec multiply(const Vec& x, const Vec& y) const;
    Vec star(const Vec& x) const;
    Vec identity() const;
    Vec unit_vector(int k) const;
    // Matrix of y -> x y
    Mat left_mult(const Vec& x) const;

    cplx regular_trace(const Vec& x) const { return trace_vec_conj_.dot(x); }
    // Tr(L_{y* x}); linear in x
    cplx tqft_inner(const Vec& x, const Vec& y) const { return regular_trace(multiply(star(y), x)); }
    static cplx colored_inner(const Vec& x, const Vec& y) { return y.dot(x); }

    // Corner identity 1_a
    Vec corner_unit(int a) const;

private:
    CategoryData cat_;
    std::vector<TubeBasisElement> basis_;
    std::map<std::array<int, 4>, int> index_;
    std::vector<std::vector<std::pair<int, cplx>>> prod_;
    std::vector<std::vector<std::pair<int, cplx>>> star_;  // b_k* as sparse list
    Vec trace_vec_conj_;  // conj(tau), tau_k = Tr L_{b_k}
};

struct TubeChecks {
    double associativity = 0;
    double star_involution = 0;
    double star_antihom = 0;
    double unit = 0;
    double min_gram_eigenvalue = 0;  // tqft Gram matrix
};

// Exhaustive when dim <= exhaustive_limit, sampled otherwise.
TubeChecks check_tube_algebra(const TubeAlgebra& alg, int exhaustive_limit = 16);

struct CenterDecomposition {
    std::vector<Vec> projections;   // pi_i
    std::vector<int> block_dims;    // n_i
    std::vector<Vec> verlinde;      // p_i = pi_i / n_i
    int vacuum_index = 0;           // always 0 after reordering
    int seed_attempts = 1;
    uint64_t seed = 0;
    double idempotent_residual = 0;
    double orthogonality_residual = 0;
    double sum_residual = 0;
    double integrality_residual = 0;  // max |n_i^2 - round|
    std::vector<double> vacuum_pairing;

    int blocks() const { return static_cast<int>(projections.size()); }
};

inline constexpr uint64_t kDefaultSeed = 0x5EED;

// Deterministic for a given seed. Throws ToleranceError on unresolved
// degeneracy or non-integer block dimensions.
CenterDecomposition center_decompose(const TubeAlgebra& alg, uint64_t seed = kDefaultSeed);

// Basis of the center, orthonormal in coordinates.
Mat center_basis(const TubeAlgebra& alg);

// Vacuum projector (1/lambda) sum_z d_z (1,1,z,z)
Vec vacuum_projector(const TubeAlgebra& alg);

// E(X) = sum_i tr_i(X) pi_i with tr_i the normalized block trace.
Vec conditional_expectation(const TubeAlgebra& alg, const CenterDecomposition& dec, const Vec& x);

// chi_i(A) = Tr(L_{pi_i A}) / n_i
cplx block_character(const TubeAlgebra& alg, const CenterDecomposition& dec, int i, const Vec& a);

// Newton refinement pi <- 3pi^2 - 2pi^3 until the residual drops below tol.
Vec refine_idempotent(const TubeAlgebra& alg, Vec p, double tol = 1e-12, int max_iter = 60);

}  // namespace doubletop
