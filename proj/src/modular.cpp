#include "doubletop/modular.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <functional>
#include <numeric>
#include <random>

#include <Eigen/Eigenvalues>

namespace doubletop {

namespace {

double max_abs(const Mat& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }
double max_abs(const Vec& v) { return v.size() ? v.cwiseAbs().maxCoeff() : 0.0; }

// Minimal projection under q inside its corner algebra, q of rank m in its block.
Vec minimal_projection(const TubeAlgebra& alg, const Vec& q, int a0, int m, uint64_t seed) {
    if (m == 1) return q;
    std::vector<int> corner;
    for (int k = 0; k < alg.dim(); ++k)
        if (alg.basis()[k].xi == a0 && alg.basis()[k].eta == a0) corner.push_back(k);
    Mat B(alg.dim(), corner.size());
    for (size_t c = 0; c < corner.size(); ++c)
        B.col(c) = alg.multiply(alg.multiply(q, alg.unit_vector(corner[c])), q);
    Eigen::JacobiSVD<Mat> svd(B, Eigen::ComputeThinU);
    int rank = 0;
    double smax = svd.singularValues().size() ? svd.singularValues()[0] : 0.0;
    for (int i = 0; i < svd.singularValues().size(); ++i)
        if (svd.singularValues()[i] > 1e-9 * std::max(1.0, smax)) ++rank;
    if (rank != m * m)
        throw ToleranceError("corner algebra has dimension " + std::to_string(rank) + ", expected " +
                             std::to_string(m * m));
    Mat Q = svd.matrixU().leftCols(rank);
    for (int attempt = 0; attempt < 8; ++attempt) {
        std::mt19937_64 rng(seed + static_cast<uint64_t>(attempt));
        std::normal_distribution<double> g(0.0, 1.0);
        Vec x = Vec::Zero(alg.dim());
        for (int k : corner) x[k] = cplx(g(rng), g(rng));
        Vec h = x + alg.star(x);
        Vec hq = alg.multiply(alg.multiply(q, h), q);
        Mat M(rank, rank);
        for (int c = 0; c < rank; ++c) M.col(c) = Q.adjoint() * alg.multiply(hq, Q.col(c));
        Eigen::ComplexEigenSolver<Mat> es(M, false);
        std::vector<double> ev;
        for (int i = 0; i < rank; ++i) ev.push_back(es.eigenvalues()[i].real());
        std::sort(ev.begin(), ev.end());
        double spread = std::max(1.0, std::max(std::abs(ev.front()), std::abs(ev.back())));
        std::vector<std::vector<double>> clusters{{ev[0]}};
        for (size_t i = 1; i < ev.size(); ++i) {
            if (ev[i] - ev[i - 1] > 1e-6 * spread) clusters.push_back({});
            clusters.back().push_back(ev[i]);
        }
        if (static_cast<int>(clusters.size()) != m) continue;
        bool even = true;
        for (const auto& c : clusters) even = even && static_cast<int>(c.size()) == m;
        if (!even) continue;
        auto mean = [](const std::vector<double>& c) {
            double s = 0;
            for (double v : c) s += v;
            return s / c.size();
        };
        double mu0 = mean(clusters[0]);
        Vec p = q;
        for (size_t c = 1; c < clusters.size(); ++c) {
            double mu = mean(clusters[c]);
            p = alg.multiply(hq - mu * q, p) / (mu0 - mu);
        }
        return refine_idempotent(alg, p);
    }
    throw ToleranceError("minimal projection: spectral degeneracy unresolved after 8 reseeds");
}

uint64_t mix_seed(uint64_t seed, int block) {
    return seed * 0x9E3779B97F4A7C15ULL + static_cast<uint64_t>(block + 1) * 0xBF58476D1CE4E5B9ULL;
}

}  // namespace

cplx HalfBraiding::diag_trace(int zeta, int delta, int a) const {
    auto it = pieces.find({zeta, delta});
    if (it == pieces.end()) return 0.0;
    const auto& P = it->second;
    cplx s = 0;
    for (size_t r = 0; r < P.rows.size(); ++r) {
        if (P.rows[r].first != a) continue;
        for (size_t c = 0; c < P.cols.size(); ++c)
            if (P.cols[c] == P.rows[r]) s += P.e(r, c);
    }
    return s;
}

Mat HalfBraiding::e_of(int zeta) const {
    int rows = 0, cols = 0;
    for (const auto& [key, P] : pieces)
        if (key.first == zeta) {
            rows += static_cast<int>(P.rows.size());
            cols += static_cast<int>(P.cols.size());
        }
    Mat out = Mat::Zero(rows, cols);
    int r0 = 0, c0 = 0;
    for (const auto& [key, P] : pieces)
        if (key.first == zeta) {
            out.block(r0, c0, P.e.rows(), P.e.cols()) = P.e;
            r0 += static_cast<int>(P.e.rows());
            c0 += static_cast<int>(P.e.cols());
        }
    return out;
}

std::vector<HalfBraiding> extract_half_braidings(const TubeAlgebra& alg, const CenterDecomposition& dec,
                                                 uint64_t seed) {
    const auto& cat = alg.category();
    const int n = cat.rank();
    const int D = alg.dim();
    std::vector<HalfBraiding> out;
    for (int i = 0; i < dec.blocks(); ++i) {
        HalfBraiding H;
        H.block = i;
        H.mult.assign(n, 0);
        int total = 0;
        for (int a = 0; a < n; ++a) {
            double m = block_character(alg, dec, i, alg.corner_unit(a)).real();
            H.mult[a] = static_cast<int>(std::lround(m));
            if (std::abs(m - H.mult[a]) > 1e-6)
                throw ToleranceError("non-integer label multiplicity in block " + std::to_string(i));
            total += H.mult[a];
        }
        const int ni = dec.block_dims[i];
        if (total != ni)
            throw ToleranceError("label multiplicities of block " + std::to_string(i) +
                                 " do not add up to its dimension");
        int a0 = 0;
        while (H.mult[a0] == 0) ++a0;
        H.corner = a0;
        Vec q = alg.multiply(dec.projections[i], alg.corner_unit(a0));
        Vec p = minimal_projection(alg, q, a0, H.mult[a0], mix_seed(seed, i));

        // graded orthonormal basis of the left ideal Tube p
        std::vector<Vec> xs;
        std::vector<int> offset(n, 0);
        for (int a = 0; a < n; ++a) {
            offset[a] = static_cast<int>(xs.size());
            if (!H.mult[a]) continue;
            int found = 0;
            for (int k = 0; k < D && found < H.mult[a]; ++k) {
                const auto& b = alg.basis()[k];
                if (b.xi != a || b.eta != a0) continue;
                Vec w = alg.multiply(alg.unit_vector(k), p);
                for (int l = offset[a]; l < static_cast<int>(xs.size()); ++l)
                    w -= alg.tqft_inner(w, xs[l]) * xs[l];
                double nrm2 = alg.tqft_inner(w, w).real();
                if (nrm2 < 1e-10) continue;
                xs.push_back(w / std::sqrt(nrm2));
                ++found;
            }
            if (found != H.mult[a])
                throw ToleranceError("left ideal of block " + std::to_string(i) + " misses grade " +
                                     std::to_string(a));
        }
        // rho(A)_{kl} = <A x_l, x_k>
        std::vector<Mat> rho(D);
        std::vector<Vec> xstar(xs.size());
        for (size_t k = 0; k < xs.size(); ++k) xstar[k] = alg.star(xs[k]);
        for (int A = 0; A < D; ++A) {
            rho[A] = Mat::Zero(ni, ni);
            const auto& b = alg.basis()[A];
            if (!H.mult[b.xi] || !H.mult[b.eta]) continue;
            for (int l = offset[b.eta]; l < offset[b.eta] + H.mult[b.eta]; ++l) {
                Vec y = alg.multiply(alg.unit_vector(A), xs[l]);
                for (int k = offset[b.xi]; k < offset[b.xi] + H.mult[b.xi]; ++k)
                    rho[A](k, l) = alg.regular_trace(alg.multiply(xstar[k], y));
            }
        }
        // representation check on pairs of basis elements
        std::vector<std::pair<int, int>> pairs;
        if (D <= 16) {
            for (int x = 0; x < D; ++x)
                for (int y = 0; y < D; ++y) pairs.push_back({x, y});
        } else {
            std::mt19937_64 rng(mix_seed(seed, i) ^ 0xA5A5);
            std::uniform_int_distribution<int> pick(0, D - 1);
            for (int s = 0; s < 256; ++s) pairs.push_back({pick(rng), pick(rng)});
        }
        for (auto [x, y] : pairs) {
            Mat lhs = Mat::Zero(ni, ni);
            for (const auto& [z, v] : alg.product(x, y)) lhs += v * rho[z];
            H.representation_residual =
                std::max(H.representation_residual, max_abs(Mat(lhs - rho[x] * rho[y])));
        }
        // half-braiding pieces
        for (int z = 0; z < n; ++z)
            for (int d = 0; d < n; ++d) {
                HalfBraiding::Piece P;
                for (int a = 0; a < n; ++a) {
                    for (int al = 0; al < H.mult[a] && cat.N(a, z, d); ++al) P.rows.push_back({a, al});
                    for (int be = 0; be < H.mult[a] && cat.N(z, a, d); ++be) P.cols.push_back({a, be});
                }
                if (P.rows.empty() && P.cols.empty()) continue;
                if (P.rows.size() != P.cols.size()) {
                    H.unitarity_residual = std::numeric_limits<double>::infinity();
                    continue;
                }
                P.e = Mat::Zero(P.rows.size(), P.cols.size());
                for (size_t r = 0; r < P.rows.size(); ++r)
                    for (size_t c = 0; c < P.cols.size(); ++c) {
                        auto [a, al] = P.rows[r];
                        auto [b, be] = P.cols[c];
                        int A = alg.index(a, b, z, d);
                        P.e(r, c) = (std::sqrt(cat.d(a) * cat.d(b)) / cat.d(d)) *
                                    std::conj(rho[A](offset[a] + al, offset[b] + be));
                    }
                Mat I = Mat::Identity(P.e.rows(), P.e.cols());
                H.unitarity_residual =
                    std::max(H.unitarity_residual, max_abs(Mat(P.e * P.e.adjoint() - I)));
                H.pieces[{z, d}] = std::move(P);
            }
        if (H.unitarity_residual > 1e-6 || H.representation_residual > 1e-6)
            throw ToleranceError("half-braiding of block " + std::to_string(i) +
                                 " fails unitarity/representation check");
        out.push_back(std::move(H));
    }
    return out;
}

TwistResult compute_T(const TubeAlgebra& alg, const CenterDecomposition& dec,
                      const std::vector<HalfBraiding>& hb) {
    const auto& cat = alg.category();
    const int n = cat.rank();
    TwistResult tw;
    const int r = dec.blocks();
    tw.t = Vec::Zero(r);
    Vec R = Vec::Zero(alg.dim());
    for (int a = 0; a < n; ++a)
        for (int d = 0; d < n; ++d) {
            int k = alg.index(a, a, a, d);
            if (k >= 0) R[k] = 1.0;
        }
    Vec Rs = alg.star(R);
    tw.unitary_residual = std::max(max_abs(Vec(alg.multiply(R, Rs) - alg.identity())),
                                   max_abs(Vec(alg.multiply(Rs, R) - alg.identity())));
    for (int i = 0; i < r; ++i) {
        const Vec& pi = dec.projections[i];
        Vec Rp = alg.multiply(R, pi);
        cplx ri = pi.dot(Rp) / pi.dot(pi);
        tw.diagonal_residual = std::max(tw.diagonal_residual, max_abs(Vec(Rp - ri * pi)));
        double dX = 0;
        for (int a = 0; a < n; ++a) dX += hb[i].mult[a] * cat.d(a);
        cplx theta = 0;
        for (int z = 0; z < n; ++z)
            for (int d = 0; d < n; ++d) theta += cat.d(d) * hb[i].diag_trace(z, d, z);
        theta /= dX;
        // the Dehn twist acts on block i by conj(theta_i); t is that eigenvalue
        tw.agreement_residual = std::max(tw.agreement_residual, std::abs(theta - std::conj(ri)));
        tw.t[i] = ri;
    }
    // T(X) T*(Y) = X Y on basis pairs
    const int D = alg.dim();
    std::mt19937_64 rng(kDefaultSeed);
    std::uniform_int_distribution<int> pick(0, D - 1);
    for (int s = 0; s < 64; ++s) {
        Vec X = alg.unit_vector(pick(rng)), Y = alg.unit_vector(pick(rng));
        Vec lhs = alg.multiply(alg.multiply(R, X), alg.multiply(Rs, Y));
        tw.relation_residual = std::max(tw.relation_residual, max_abs(Vec(lhs - alg.multiply(X, Y))));
    }
    for (int i = 0; i < r; ++i)
        if (std::abs(std::abs(tw.t[i]) - 1.0) > 1e-6)
            throw ToleranceError("non-unimodular twist eigenvalue in block " + std::to_string(i));
    return tw;
}

FusionResult verlinde_fusion(const Mat& S) {
    const int r = static_cast<int>(S.rows());
    FusionResult fr;
    fr.N.assign(r * r * r, 0);
    for (int l = 0; l < r; ++l)
        if (std::abs(S(0, l)) < 1e-12) throw ToleranceError("S_0l vanishes; Verlinde formula undefined");
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j)
            for (int k = 0; k < r; ++k) {
                cplx s = 0;
                for (int l = 0; l < r; ++l) s += S(i, l) * S(j, l) * std::conj(S(l, k)) / S(0, l);
                long v = std::lround(s.real());
                fr.max_rounding = std::max(fr.max_rounding, std::abs(s - cplx(double(v), 0)));
                fr.N[(i * r + j) * r + k] = static_cast<int>(v);
            }
    return fr;
}

FusionResult pants_dims(const TubeAlgebra& alg, const CenterDecomposition& dec) {
    const auto& cat = alg.category();
    const int n = cat.rank();
    const int r = dec.blocks();
    const int D = alg.dim();
    std::vector<int> diag;
    for (int k = 0; k < D; ++k)
        if (alg.basis()[k].xi == alg.basis()[k].eta) diag.push_back(k);
    // chi[i][k] for diagonal basis elements
    std::vector<std::vector<cplx>> chi(r, std::vector<cplx>(D, 0.0));
    for (int i = 0; i < r; ++i)
        for (int k : diag) chi[i][k] = block_character(alg, dec, i, alg.unit_vector(k));
    // xt[i][(a,z,d)] = (d_a/d_d) conj chi_i(a,a,z,d)
    auto xt = [&](int i, int a, int z, int d) -> cplx {
        int k = alg.index(a, a, z, d);
        return k < 0 ? cplx(0) : (cat.d(a) / cat.d(d)) * std::conj(chi[i][k]);
    };
    FusionResult fr;
    fr.N.assign(r * r * r, 0);
    std::vector<cplx> chi_ij(D);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) {
            for (int k : diag) {
                const auto& A = alg.basis()[k];
                const int c = A.xi, z = A.zeta, d = A.delta;
                cplx s = 0;
                for (int a = 0; a < n; ++a)
                    for (int b = 0; b < n; ++b) {
                        if (!cat.N(a, b, c)) continue;
                        for (int d1 = 0; d1 < n; ++d1) {
                            cplx x = xt(i, a, z, d1);
                            if (x == cplx(0)) continue;
                            for (int d2 = 0; d2 < n; ++d2) {
                                cplx y = xt(j, b, z, d2);
                                if (y == cplx(0)) continue;
                                cplx K = cat.F(a, b, z, d, c, d2) * std::conj(cat.F(a, z, b, d, d1, d2)) *
                                         cat.F(z, a, b, d, d1, c);
                                s += x * y * K;
                            }
                        }
                    }
                chi_ij[k] = (cat.d(d) / cat.d(c)) * std::conj(s);
            }
            for (int kb = 0; kb < r; ++kb) {
                cplx v = 0;
                for (int k : diag) v += dec.projections[kb][k] * chi_ij[k];
                v /= static_cast<double>(dec.block_dims[kb]);
                long rv = std::lround(v.real());
                fr.max_rounding = std::max(fr.max_rounding, std::abs(v - cplx(double(rv), 0)));
                fr.N[(i * r + j) * r + kb] = static_cast<int>(rv);
            }
        }
    if (fr.max_rounding > 1e-6)
        throw ToleranceError("pants dimensions are not integral (residual " +
                             std::to_string(fr.max_rounding) + ")");
    return fr;
}

double check_U_condition(const TubeAlgebra& alg, const CenterDecomposition& dec) {
    double res = 0;
    for (const auto& p : dec.verlinde) res = std::max(res, max_abs(Vec(alg.star(p) - p)));
    return res;
}

void complete_modular_data(ModularData& md) {
    const int r = static_cast<int>(md.S.rows());
    md.rank = r;
    const Mat& S = md.S;
    Residuals& R = md.residuals;
    Mat I = Mat::Identity(r, r);
    R["s_unitary"] = max_abs(Mat(S * S.adjoint() - I));
    R["s_symmetric"] = max_abs(Mat(S - S.transpose()));
    double tu = 0;
    for (int i = 0; i < r; ++i) tu = std::max(tu, std::abs(std::abs(md.t[i]) - 1.0));
    R["t_unimodular"] = tu;
    R["t0"] = std::abs(md.t[0] - 1.0);
    double row0_min = std::numeric_limits<double>::infinity(), row0_imag = 0;
    md.qdim.assign(r, 0.0);
    for (int i = 0; i < r; ++i) {
        row0_min = std::min(row0_min, S(i, 0).real());
        row0_imag = std::max(row0_imag, std::abs(S(i, 0).imag()));
        md.qdim[i] = (S(0, i) / S(0, 0)).real();
    }
    R["s_row0_min"] = row0_min;
    R["s_row0_imag"] = row0_imag;

    Mat S2 = S * S;
    md.C.assign(r, -1);
    Mat P = Mat::Zero(r, r);
    for (int i = 0; i < r; ++i) {
        int best = 0;
        for (int j = 1; j < r; ++j)
            if (std::abs(S2(i, j)) > std::abs(S2(i, best))) best = j;
        md.C[i] = best;
        P(i, best) = 1.0;
    }
    bool perm = md.C[0] == 0;
    std::vector<int> seen(r, 0);
    for (int i = 0; i < r; ++i) {
        perm = perm && !seen[md.C[i]]++;
        perm = perm && md.C[md.C[i]] == i;
    }
    R["c_permutation"] = std::max(max_abs(Mat(S2 - P)), perm ? 0.0 : 1.0);
    Mat T = md.t.asDiagonal();
    Mat ST = S * T;
    R["st3"] = max_abs(Mat(ST * ST * ST - S2));

    FusionResult fr = verlinde_fusion(S);
    md.N = fr.N;
    R["verlinde_rounding"] = fr.max_rounding;
    double n0 = 0, neg = 0;
    for (int j = 0; j < r; ++j)
        for (int k = 0; k < r; ++k) {
            n0 = std::max(n0, std::abs(md.fusion(0, j, k) - (j == k ? 1.0 : 0.0)));
            for (int i = 0; i < r; ++i) neg = std::max(neg, md.fusion(i, j, k) < 0 ? 1.0 : 0.0);
        }
    R["n0_identity"] = n0;
    R["n_nonnegative"] = neg;

    md.gauss_plus = md.gauss_minus = 0;
    double d2 = 0;
    for (int i = 0; i < r; ++i) {
        double q2 = std::norm(S(0, i) / S(0, 0));
        md.gauss_plus += q2 / md.t[i];
        md.gauss_minus += q2 * md.t[i];
        d2 += q2;
    }
    md.D = std::sqrt(d2);
    if (md.lambda == 0) md.lambda = 1.0 / S(0, 0).real();
    R["gauss_plus"] = std::abs(md.gauss_plus - md.lambda);
    R["gauss_minus"] = std::abs(md.gauss_minus - md.lambda);
    R["gauss_D"] = std::abs(md.D - md.lambda);
    R["inverse_s00"] = std::abs(1.0 / S(0, 0) - md.lambda);
}

void assert_verlinde_axioms(const ModularData& md, double tol, double int_tol) {
    const auto& R = md.residuals;
    for (const char* key : {"s_unitary", "s_symmetric", "t_unimodular", "t0", "s_row0_imag",
                            "c_permutation", "st3", "gauss_plus", "gauss_minus", "gauss_D",
                            "inverse_s00"})
        if (R.get(key) > tol)
            throw ToleranceError(std::string("Verlinde-basis axiom failed: ") + key + " residual " +
                                 std::to_string(R.get(key)));
    if (R.get("s_row0_min") <= 0) throw ToleranceError("Verlinde-basis axiom failed: S_i0 not positive");
    if (R.get("verlinde_rounding") > int_tol)
        throw ToleranceError("Verlinde fusion not integral (residual " +
                             std::to_string(R.get("verlinde_rounding")) + ")");
    if (R.get("n0_identity") > 0 || R.get("n_nonnegative") > 0)
        throw ToleranceError("Verlinde fusion violates N_0j^k = delta_jk or positivity");
}

ModularData compute_S(const TubeAlgebra& alg, const CenterDecomposition& dec,
                      const std::vector<HalfBraiding>& hb, const TwistResult& tw) {
    const auto& cat = alg.category();
    const int n = cat.rank();
    const int r = dec.blocks();
    const double lam = global_dim(cat);
    ModularData md;
    md.lambda = lam;
    md.S = Mat::Zero(r, r);
    for (int X = 0; X < r; ++X)
        for (int Y = 0; Y < r; ++Y) {
            cplx s = 0;
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b)
                    for (int d = 0; d < n; ++d) {
                        cplx x = hb[X].diag_trace(b, d, a);
                        if (x == cplx(0)) continue;
                        s += cat.d(d) * x * hb[Y].diag_trace(a, d, b);
                    }
            md.S(X, Y) = s / lam;
        }
    // same matrix from block characters
    double sc = 0;
    std::vector<std::vector<cplx>> chi(r, std::vector<cplx>(alg.dim(), 0.0));
    for (int i = 0; i < r; ++i)
        for (int k = 0; k < alg.dim(); ++k)
            if (alg.basis()[k].xi == alg.basis()[k].eta)
                chi[i][k] = block_character(alg, dec, i, alg.unit_vector(k));
    for (int X = 0; X < r; ++X)
        for (int Y = 0; Y < r; ++Y) {
            cplx s = 0;
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b)
                    for (int d = 0; d < n; ++d) {
                        int k1 = alg.index(a, a, b, d), k2 = alg.index(b, b, a, d);
                        if (k1 < 0 || k2 < 0) continue;
                        s += cat.d(a) * cat.d(b) / cat.d(d) * std::conj(chi[X][k1] * chi[Y][k2]);
                    }
            sc = std::max(sc, std::abs(s / lam - md.S(X, Y)));
        }
    md.t = tw.t;
    complete_modular_data(md);
    md.residuals["s_character"] = sc;
    double qd = 0, hbu = 0, hbr = 0;
    for (int i = 0; i < r; ++i) {
        double dX = 0;
        for (int a = 0; a < n; ++a) dX += hb[i].mult[a] * cat.d(a);
        qd = std::max(qd, std::abs(md.qdim[i] - dX));
        hbu = std::max(hbu, hb[i].unitarity_residual);
        hbr = std::max(hbr, hb[i].representation_residual);
    }
    md.residuals["qdim"] = qd;
    md.residuals["half_braiding_unitarity"] = hbu;
    md.residuals["half_braiding_representation"] = hbr;
    md.residuals["twist_diagonal"] = tw.diagonal_residual;
    md.residuals["twist_agreement"] = tw.agreement_residual;
    md.residuals["twist_relation"] = tw.relation_residual;
    md.residuals["twist_unitary"] = tw.unitary_residual;
    md.residuals["u_condition"] = check_U_condition(alg, dec);
    assert_verlinde_axioms(md);
    for (const char* key : {"qdim", "s_character", "twist_diagonal", "twist_agreement",
                            "twist_relation", "twist_unitary"})
        if (md.residuals.get(key) > 1e-8)
            throw ToleranceError(std::string("consistency check failed: ") + key);
    if (md.residuals.get("u_condition") > 1e-9)
        throw ToleranceError("U-condition failed: a Verlinde vector is not self-adjoint");
    return md;
}

namespace {

struct SortKey {
    long qdim;
    long phase;
    std::vector<std::pair<long, long>> row;
    bool operator<(const SortKey& o) const {
        return std::tie(qdim, phase, row) < std::tie(o.qdim, o.phase, o.row);
    }
};

long quant(double x) { return std::lround(x * 1e6); }

std::vector<int> canonical_order(const ModularData& md) {
    const int r = md.rank;
    std::vector<SortKey> keys(r);
    for (int i = 0; i < r; ++i) {
        keys[i].qdim = quant(md.qdim[i]);
        double ph = std::arg(md.t[i]);
        if (ph < -1e-9) ph += 2 * std::numbers::pi;
        keys[i].phase = quant(std::max(ph, 0.0));
        for (int j = 0; j < r; ++j) keys[i].row.push_back({quant(md.S(i, j).real()), quant(md.S(i, j).imag())});
        std::sort(keys[i].row.begin(), keys[i].row.end());
    }
    std::vector<int> order(r);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin() + 1, order.end(), [&](int a, int b) { return keys[a] < keys[b]; });
    return order;
}

}  // namespace

std::unique_ptr<Pipeline> run_pipeline(const CategoryData& cat, uint64_t seed) {
    auto P = std::make_unique<Pipeline>();
    P->cat = std::make_unique<CategoryData>(cat);
    P->alg = std::make_unique<TubeAlgebra>(*P->cat);
    const TubeAlgebra& alg = *P->alg;
    P->dec = center_decompose(alg, seed);
    P->hb = extract_half_braidings(alg, P->dec, seed);
    P->twist = compute_T(alg, P->dec, P->hb);
    P->md = compute_S(alg, P->dec, P->hb, P->twist);

    std::vector<int> order = canonical_order(P->md);
    CenterDecomposition d2 = P->dec;
    std::vector<HalfBraiding> hb2;
    for (size_t i = 0; i < order.size(); ++i) {
        int o = order[i];
        d2.projections[i] = P->dec.projections[o];
        d2.block_dims[i] = P->dec.block_dims[o];
        d2.verlinde[i] = P->dec.verlinde[o];
        d2.vacuum_pairing[i] = P->dec.vacuum_pairing[o];
        hb2.push_back(P->hb[o]);
        hb2.back().block = static_cast<int>(i);
    }
    P->dec = std::move(d2);
    P->hb = std::move(hb2);
    P->twist = compute_T(alg, P->dec, P->hb);
    P->md = compute_S(alg, P->dec, P->hb, P->twist);
    P->pants = pants_dims(alg, P->dec);
    int mismatch = 0;
    for (size_t k = 0; k < P->pants.N.size(); ++k) mismatch += P->pants.N[k] != P->md.N[k];
    P->md.residuals["pants_rounding"] = P->pants.max_rounding;
    P->md.residuals["pants_vs_verlinde"] = mismatch;
    return P;
}

ModularData group_double_oracle(int n) {
    if (n < 1) throw CategoryError("group order must be positive");
    const int r = n * n;
    ModularData md;
    md.S = Mat::Zero(r, r);
    md.t = Vec::Zero(r);
    const double tau = 2 * std::numbers::pi / n;
    for (int g = 0; g < n; ++g)
        for (int x = 0; x < n; ++x) {
            int i = g * n + x;
            md.t[i] = std::polar(1.0, tau * ((g * x) % n));
            for (int h = 0; h < n; ++h)
                for (int y = 0; y < n; ++y)
                    md.S(i, h * n + y) = std::polar(1.0 / n, -tau * ((x * h + y * g) % n));
        }
    md.lambda = n;
    complete_modular_data(md);
    return md;
}

ModularData modular_data_from_rsymbols(const CategoryData& cat) {
    const int n = cat.rank();
    ModularData md;
    md.t = Vec::Zero(n);
    for (int a = 0; a < n; ++a) {
        cplx s = 0;
        for (int c = 0; c < n; ++c)
            if (cat.N(a, a, c)) s += cat.d(c) * cat.R(a, a, c);
        md.t[a] = s / cat.d(a);
    }
    const double Dc = std::sqrt(global_dim(cat));
    md.S = Mat::Zero(n, n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            cplx s = 0;
            for (int c = 0; c < n; ++c)
                if (cat.N(cat.dual(a), b, c)) s += md.t[c] / (md.t[a] * md.t[b]) * cat.d(c);
            md.S(a, b) = s / Dc;
        }
    md.lambda = Dc;
    complete_modular_data(md);
    return md;
}

std::vector<int> match_permutation(const ModularData& a, const ModularData& b, double tol) {
    const int r = static_cast<int>(a.S.rows());
    if (r != b.S.rows()) return {};
    std::vector<int> sigma(r, -1);
    std::vector<char> used(r, 0);
    auto ok = [&](int i, int j) {
        if (std::abs(a.t[i] - b.t[j]) > tol) return false;
        for (int k = 0; k < i; ++k) {
            if (std::abs(a.S(i, k) - b.S(j, sigma[k])) > tol) return false;
            if (std::abs(a.S(k, i) - b.S(sigma[k], j)) > tol) return false;
        }
        return std::abs(a.S(i, i) - b.S(j, j)) <= tol;
    };
    std::function<bool(int)> go = [&](int i) {
        if (i == r) return true;
        for (int j = (i == 0 ? 0 : 1); j < (i == 0 ? 1 : r); ++j) {
            if (used[j] || !ok(i, j)) continue;
            sigma[i] = j;
            used[j] = 1;
            if (go(i + 1)) return true;
            used[j] = 0;
            sigma[i] = -1;
        }
        return false;
    };
    if (!go(0)) return {};
    return sigma;
}

}  // namespace doubletop
