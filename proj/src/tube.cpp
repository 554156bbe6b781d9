#include "doubletop/tube.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <Eigen/Eigenvalues>

namespace doubletop {

namespace {

double max_abs(const Vec& v) { return v.size() ? v.cwiseAbs().maxCoeff() : 0.0; }

}  // namespace

TubeAlgebra::TubeAlgebra(const CategoryData& cat) : cat_(cat) {
    if (!cat.ring.multiplicity_free())
        throw CategoryError("tube algebra supports multiplicity-free categories only");
    validate_category(cat);
    const int n = cat.rank();
    for (int xi = 0; xi < n; ++xi)
        for (int eta = 0; eta < n; ++eta)
            for (int z = 0; z < n; ++z)
                for (int d = 0; d < n; ++d)
                    if (cat.N(xi, z, d) && cat.N(z, eta, d)) {
                        index_[{xi, eta, z, d}] = static_cast<int>(basis_.size());
                        basis_.push_back({xi, eta, z, d});
                    }
    const int D = dim();
    prod_.assign(static_cast<size_t>(D) * D, {});
    for (int k = 0; k < D; ++k) {
        const auto& X = basis_[k];
        for (int j = 0; j < D; ++j) {
            const auto& Y = basis_[j];
            if (X.eta != Y.xi) continue;
            const int a = X.xi, b = X.eta, c = Y.eta, z = X.zeta, zp = Y.zeta, d = X.delta,
                      dp = Y.delta;
            auto& out = prod_[static_cast<size_t>(k) * D + j];
            for (int nu = 0; nu < n; ++nu) {
                if (!cat.N(z, zp, nu)) continue;
                for (int eps = 0; eps < n; ++eps) {
                    int target = index(a, c, nu, eps);
                    if (target < 0) continue;
                    cplx v = std::conj(cat.F(a, z, zp, eps, d, nu)) * cat.F(z, b, zp, eps, d, dp) *
                             std::conj(cat.F(z, zp, c, eps, nu, dp));
                    if (std::abs(v) > 1e-15) out.push_back({target, v});
                }
            }
        }
    }
    star_.assign(D, {});
    for (int k = 0; k < D; ++k) {
        const auto& X = basis_[k];
        const int a = X.xi, b = X.eta, z = X.zeta, d = X.delta, zb = cat.dual(z);
        cplx denom = std::conj(cat.F(z, zb, z, z, 0, 0));
        for (int dp = 0; dp < n; ++dp) {
            int target = index(b, a, zb, dp);
            if (target < 0) continue;
            cplx v = cat.F(zb, z, dp, dp, 0, a) * std::conj(cat.F(z, b, zb, a, d, dp)) *
                     cat.F(a, z, zb, a, d, 0) / denom;
            if (std::abs(v) > 1e-15) star_[k].push_back({target, v});
        }
    }
    Vec tau = Vec::Zero(D);
    for (int k = 0; k < D; ++k)
        for (int j = 0; j < D; ++j)
            for (const auto& [i, v] : product(k, j))
                if (i == j) tau[k] += v;
    trace_vec_conj_ = tau.conjugate();
}

int TubeAlgebra::index(int xi, int eta, int zeta, int delta) const {
    auto it = index_.find({xi, eta, zeta, delta});
    return it == index_.end() ? -1 : it->second;
}

Vec TubeAlgebra::multiply(const Vec& x, const Vec& y) const {
    const int D = dim();
    Vec out = Vec::Zero(D);
    for (int k = 0; k < D; ++k) {
        if (x[k] == cplx(0, 0)) continue;
        for (int j = 0; j < D; ++j) {
            if (y[j] == cplx(0, 0)) continue;
            cplx s = x[k] * y[j];
            for (const auto& [i, v] : product(k, j)) out[i] += s * v;
        }
    }
    return out;
}

Vec TubeAlgebra::star(const Vec& x) const {
    Vec out = Vec::Zero(dim());
    for (int k = 0; k < dim(); ++k) {
        if (x[k] == cplx(0, 0)) continue;
        cplx s = std::conj(x[k]);
        for (const auto& [i, v] : star_[k]) out[i] += s * v;
    }
    return out;
}

Vec TubeAlgebra::unit_vector(int k) const {
    Vec e = Vec::Zero(dim());
    e[k] = 1.0;
    return e;
}

Vec TubeAlgebra::corner_unit(int a) const {
    Vec e = Vec::Zero(dim());
    e[index(a, a, 0, a)] = 1.0;
    return e;
}

Vec TubeAlgebra::identity() const {
    Vec e = Vec::Zero(dim());
    for (int a = 0; a < cat_.rank(); ++a) e[index(a, a, 0, a)] = 1.0;
    return e;
}

Mat TubeAlgebra::left_mult(const Vec& x) const {
    const int D = dim();
    Mat M = Mat::Zero(D, D);
    for (int k = 0; k < D; ++k) {
        if (x[k] == cplx(0, 0)) continue;
        for (int j = 0; j < D; ++j)
            for (const auto& [i, v] : product(k, j)) M(i, j) += x[k] * v;
    }
    return M;
}

TubeChecks check_tube_algebra(const TubeAlgebra& alg, int exhaustive_limit) {
    TubeChecks c;
    const int D = alg.dim();
    std::vector<Vec> b(D), bs(D);
    for (int k = 0; k < D; ++k) {
        b[k] = alg.unit_vector(k);
        bs[k] = alg.star(b[k]);
    }
    std::vector<std::array<int, 3>> triples;
    if (D <= exhaustive_limit) {
        for (int i = 0; i < D; ++i)
            for (int j = 0; j < D; ++j)
                for (int k = 0; k < D; ++k) triples.push_back({i, j, k});
    } else {
        std::mt19937_64 rng(kDefaultSeed);
        std::uniform_int_distribution<int> pick(0, D - 1);
        for (int s = 0; s < 4000; ++s) triples.push_back({pick(rng), pick(rng), pick(rng)});
    }
    for (auto [i, j, k] : triples) {
        Vec lhs = alg.multiply(alg.multiply(b[i], b[j]), b[k]);
        Vec rhs = alg.multiply(b[i], alg.multiply(b[j], b[k]));
        c.associativity = std::max(c.associativity, max_abs(lhs - rhs));
    }
    Vec one = alg.identity();
    for (int i = 0; i < D; ++i) {
        c.star_involution = std::max(c.star_involution, max_abs(alg.star(bs[i]) - b[i]));
        c.unit = std::max(c.unit, max_abs(alg.multiply(one, b[i]) - b[i]));
        c.unit = std::max(c.unit, max_abs(alg.multiply(b[i], one) - b[i]));
        for (int j = 0; j < D; ++j) {
            Vec lhs = alg.star(alg.multiply(b[i], b[j]));
            Vec rhs = alg.multiply(bs[j], bs[i]);
            c.star_antihom = std::max(c.star_antihom, max_abs(lhs - rhs));
        }
    }
    Mat G(D, D);
    for (int k = 0; k < D; ++k)
        for (int l = 0; l < D; ++l) G(k, l) = alg.tqft_inner(b[l], b[k]);
    Mat H = (G + G.adjoint()) / 2.0;
    Eigen::SelfAdjointEigenSolver<Mat> es(H);
    c.min_gram_eigenvalue = es.eigenvalues().minCoeff();
    return c;
}

Mat center_basis(const TubeAlgebra& alg) {
    const int D = alg.dim();
    Mat H = Mat::Zero(D, D);
    for (int j = 0; j < D; ++j) {
        Mat C = Mat::Zero(D, D);
        Vec bj = alg.unit_vector(j);
        for (int k = 0; k < D; ++k) {
            Vec bk = alg.unit_vector(k);
            C.col(k) = alg.multiply(bk, bj) - alg.multiply(bj, bk);
        }
        H += C.adjoint() * C;
    }
    Eigen::SelfAdjointEigenSolver<Mat> es(H);
    double scale = std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff());
    std::vector<int> cols;
    for (int i = 0; i < D; ++i)
        if (es.eigenvalues()[i] < 1e-9 * scale) cols.push_back(i);
    Mat Z(D, cols.size());
    for (size_t i = 0; i < cols.size(); ++i) Z.col(i) = es.eigenvectors().col(cols[i]);
    return Z;
}

Vec vacuum_projector(const TubeAlgebra& alg) {
    const auto& cat = alg.category();
    Vec P = Vec::Zero(alg.dim());
    double lam = global_dim(cat);
    for (int z = 0; z < cat.rank(); ++z) P[alg.index(0, 0, z, z)] = cat.d(z) / lam;
    return P;
}

Vec refine_idempotent(const TubeAlgebra& alg, Vec p, double tol, int max_iter) {
    for (int it = 0; it < max_iter; ++it) {
        Vec p2 = alg.multiply(p, p);
        if (max_abs(p2 - p) < tol) break;
        Vec p3 = alg.multiply(p2, p);
        p = 3.0 * p2 - 2.0 * p3;
    }
    return p;
}

CenterDecomposition center_decompose(const TubeAlgebra& alg, uint64_t seed) {
    const int D = alg.dim();
    Mat Z = center_basis(alg);
    const int r = static_cast<int>(Z.cols());
    CenterDecomposition dec;
    dec.seed = seed;
    std::vector<Vec> raw;
    for (int attempt = 0; attempt < 8 && raw.empty(); ++attempt) {
        dec.seed_attempts = attempt + 1;
        std::mt19937_64 rng(seed + static_cast<uint64_t>(attempt));
        std::normal_distribution<double> g(0.0, 1.0);
        Vec c(r);
        for (int i = 0; i < r; ++i) c[i] = cplx(g(rng), g(rng));
        Vec z = Z * c;
        Vec h = z + alg.star(z);
        Mat M(r, r);
        for (int i = 0; i < r; ++i) M.col(i) = Z.adjoint() * alg.multiply(h, Z.col(i));
        Eigen::ComplexEigenSolver<Mat> es(M);
        const auto& ev = es.eigenvalues();
        double spread = std::max(1.0, ev.cwiseAbs().maxCoeff());
        double gap = std::numeric_limits<double>::infinity();
        for (int i = 0; i < r; ++i)
            for (int j = i + 1; j < r; ++j) gap = std::min(gap, std::abs(ev[i] - ev[j]));
        if (r > 1 && gap < 1e-6 * spread) continue;
        for (int i = 0; i < r; ++i) {
            Vec e = Z * es.eigenvectors().col(i);
            Vec e2 = alg.multiply(e, e);
            cplx scale = e.dot(e2) / e.dot(e);  // e^2 = scale * e
            raw.push_back(refine_idempotent(alg, e / scale));
        }
    }
    if (raw.empty())
        throw ToleranceError("spectral degeneracy unresolved after 8 reseeds");

    Vec P = vacuum_projector(alg);
    int vac = -1;
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < r; ++i) {
        double res = max_abs(alg.multiply(raw[i], P) - P);
        if (res < best) {
            best = res;
            vac = i;
        }
    }
    std::vector<int> order{vac};
    for (int i = 0; i < r; ++i)
        if (i != vac) order.push_back(i);

    Vec sum = Vec::Zero(D);
    for (int i : order) {
        const Vec& pi = raw[i];
        double n2 = alg.regular_trace(pi).real();
        double rn2 = std::round(n2);
        dec.integrality_residual = std::max(dec.integrality_residual, std::abs(n2 - rn2));
        int ni = static_cast<int>(std::lround(std::sqrt(std::max(rn2, 0.0))));
        if (ni * ni != static_cast<int>(rn2) || ni < 1)
            throw ToleranceError("block dimension squared " + std::to_string(n2) + " is not a square");
        dec.projections.push_back(pi);
        dec.block_dims.push_back(ni);
        dec.verlinde.push_back(pi / static_cast<double>(ni));
        sum += pi;
    }
    if (dec.integrality_residual > 1e-6)
        throw ToleranceError("non-integer block dimension (residual " +
                             std::to_string(dec.integrality_residual) + ")");
    dec.sum_residual = max_abs(sum - alg.identity());
    for (int i = 0; i < r; ++i) {
        dec.idempotent_residual = std::max(
            dec.idempotent_residual,
            max_abs(alg.multiply(dec.projections[i], dec.projections[i]) - dec.projections[i]));
        for (int j = 0; j < r; ++j)
            if (i != j)
                dec.orthogonality_residual =
                    std::max(dec.orthogonality_residual,
                             max_abs(alg.multiply(dec.projections[i], dec.projections[j])));
        dec.vacuum_pairing.push_back(alg.regular_trace(alg.multiply(alg.star(P), dec.projections[i])).real());
    }
    dec.vacuum_index = 0;
    return dec;
}

Vec conditional_expectation(const TubeAlgebra& alg, const CenterDecomposition& dec, const Vec& x) {
    Vec out = Vec::Zero(alg.dim());
    for (int i = 0; i < dec.blocks(); ++i) {
        double n2 = static_cast<double>(dec.block_dims[i]) * dec.block_dims[i];
        out += (alg.regular_trace(alg.multiply(dec.projections[i], x)) / n2) * dec.projections[i];
    }
    return out;
}

cplx block_character(const TubeAlgebra& alg, const CenterDecomposition& dec, int i, const Vec& a) {
    return alg.regular_trace(alg.multiply(dec.projections[i], a)) / static_cast<double>(dec.block_dims[i]);
}

}  // namespace doubletop
