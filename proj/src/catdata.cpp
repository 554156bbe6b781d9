#include "doubletop/catdata.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <Eigen/Dense>
#include <json.hpp>

namespace doubletop {

namespace {

std::string lbl(const CategoryData& cat, int a) {
    if (a >= 0 && a < static_cast<int>(cat.labels.size()) && !cat.labels[a].name.empty())
        return cat.labels[a].name;
    return std::to_string(a);
}

// products[a*n+b] = labels c with N_ab^c > 0
std::vector<std::vector<int>> product_lists(const FusionRing& r) {
    std::vector<std::vector<int>> out(r.n * r.n);
    for (int a = 0; a < r.n; ++a)
        for (int b = 0; b < r.n; ++b)
            for (int c = 0; c < r.n; ++c)
                if (r.mult(a, b, c) > 0) out[a * r.n + b].push_back(c);
    return out;
}

struct BasisTriple {
    int label, i, j;
};

// Row basis (e, alpha, beta) and column basis (f, gamma, delta) of the block F^{abc}_d.
void block_bases(const CategoryData& cat, int a, int b, int c, int d,
                 std::vector<BasisTriple>& rows, std::vector<BasisTriple>& cols) {
    rows.clear();
    cols.clear();
    int n = cat.rank();
    for (int e = 0; e < n; ++e)
        for (int al = 0; al < cat.N(a, b, e); ++al)
            for (int be = 0; be < cat.N(e, c, d); ++be) rows.push_back({e, al, be});
    for (int f = 0; f < n; ++f)
        for (int ga = 0; ga < cat.N(b, c, f); ++ga)
            for (int de = 0; de < cat.N(a, f, d); ++de) cols.push_back({f, ga, de});
}

Eigen::MatrixXcd block_matrix(const CategoryData& cat, int a, int b, int c, int d,
                              const std::vector<BasisTriple>& rows,
                              const std::vector<BasisTriple>& cols) {
    Eigen::MatrixXcd M(rows.size(), cols.size());
    for (size_t r = 0; r < rows.size(); ++r)
        for (size_t s = 0; s < cols.size(); ++s)
            M(r, s) = cat.F(a, b, c, d, rows[r].label, cols[s].label, rows[r].i, rows[r].j,
                            cols[s].i, cols[s].j);
    return M;
}

}  // namespace

bool FusionRing::multiplicity_free() const {
    for (int v : N)
        if (v > 1) return false;
    return true;
}

void SixJTensor::finalize(const FusionRing& ring) {
    n_ = ring.n;
    dense_.clear();
    size_t n6 = 1;
    for (int i = 0; i < 6; ++i) n6 *= static_cast<size_t>(n_);
    if (!ring.multiplicity_free() || n6 > (size_t(1) << 21)) return;
    dense_.assign(n6, cplx(0, 0));
    for (const auto& [k, v] : entries_)
        dense_[idx6(k[0], k[1], k[2], k[3], k[4], k[5])] = v;
}

cplx SixJTensor::get(int a, int b, int c, int d, int e, int f, int al, int be, int ga,
                     int de) const {
    if (!dense_.empty() && (al | be | ga | de) == 0) return fast(a, b, c, d, e, f);
    auto it = entries_.find(SixJKey{a, b, c, d, e, f, al, be, ga, de});
    return it == entries_.end() ? cplx(0, 0) : it->second;
}

cplx CategoryData::R(int a, int b, int c) const {
    if (!rsymbols) throw CategoryError("category '" + name + "' carries no R-symbols");
    auto it = rsymbols->find({a, b, c});
    return it == rsymbols->end() ? cplx(0, 0) : it->second;
}

double global_dim(const CategoryData& cat) {
    double s = 0;
    for (double x : cat.qdims) s += x * x;
    return s;
}

void check_fusion_ring(const FusionRing& r) {
    int n = r.n;
    if (n < 1) throw CategoryError("empty label set");
    if (static_cast<int>(r.dual.size()) != n) throw CategoryError("dual table has wrong length");
    if (static_cast<int>(r.N.size()) != n * n * n) throw CategoryError("fusion tensor has wrong size");
    for (int v : r.N)
        if (v < 0) throw CategoryError("negative fusion multiplicity");
    if (r.dual[0] != 0) throw CategoryError("dual of the unit is not the unit");
    for (int a = 0; a < n; ++a) {
        int ad = r.dual[a];
        if (ad < 0 || ad >= n || r.dual[ad] != a)
            throw CategoryError("dual is not an involution at label " + std::to_string(a));
    }
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            int want = a == b ? 1 : 0;
            if (r.mult(0, a, b) != want || r.mult(a, 0, b) != want)
                throw CategoryError("unit law violated at (" + std::to_string(a) + "," +
                                    std::to_string(b) + ")");
            int dw = b == r.dual[a] ? 1 : 0;
            if (r.mult(a, b, 0) != dw)
                throw CategoryError("duality law violated at (" + std::to_string(a) + "," +
                                    std::to_string(b) + ")");
        }
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                for (int t = 0; t < n; ++t) {
                    long lhs = 0, rhs = 0;
                    for (int d = 0; d < n; ++d) {
                        lhs += long(r.mult(a, b, d)) * r.mult(d, c, t);
                        rhs += long(r.mult(b, c, d)) * r.mult(a, d, t);
                    }
                    if (lhs != rhs)
                        throw CategoryError("associativity violated at (" + std::to_string(a) +
                                            "," + std::to_string(b) + "," + std::to_string(c) +
                                            ";" + std::to_string(t) + ")");
                }
}

double dims_residual(const CategoryData& cat) {
    int n = cat.rank();
    double res = std::abs(cat.d(0) - 1.0);
    for (int a = 0; a < n; ++a) {
        res = std::max(res, std::abs(cat.d(a) - cat.d(cat.dual(a))));
        for (int b = 0; b < n; ++b) {
            double s = 0;
            for (int c = 0; c < n; ++c) s += cat.N(a, b, c) * cat.d(c);
            res = std::max(res, std::abs(cat.d(a) * cat.d(b) - s));
        }
    }
    return res;
}

void check_sixj_shape(const CategoryData& cat) {
    int n = cat.rank();
    auto shape_error = [&](const std::string& where) {
        return CategoryError("multiplicity/F-tensor shape mismatch " + where);
    };
    for (const auto& [k, v] : cat.sixj.entries()) {
        if (v == cplx(0, 0)) continue;
        for (int i = 0; i < 6; ++i)
            if (k[i] < 0 || k[i] >= n) throw shape_error("(label out of range)");
        int a = k[0], b = k[1], c = k[2], d = k[3], e = k[4], f = k[5];
        if (k[6] < 0 || k[6] >= cat.N(a, b, e) || k[7] < 0 || k[7] >= cat.N(e, c, d) ||
            k[8] < 0 || k[8] >= cat.N(b, c, f) || k[9] < 0 || k[9] >= cat.N(a, f, d))
            throw shape_error("at entry F^{" + lbl(cat, a) + lbl(cat, b) + lbl(cat, c) + "}_" +
                              lbl(cat, d) + "[" + lbl(cat, e) + "," + lbl(cat, f) +
                              "] (basis index outside multiplicity space)");
    }
    std::vector<BasisTriple> rows, cols;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                for (int d = 0; d < n; ++d) {
                    block_bases(cat, a, b, c, d, rows, cols);
                    if (rows.size() != cols.size())
                        throw shape_error("(non-square block, fusion not associative)");
                    if (rows.empty()) continue;
                    Eigen::MatrixXcd M = block_matrix(cat, a, b, c, d, rows, cols);
                    for (int r = 0; r < M.rows(); ++r)
                        if (M.row(r).norm() == 0 || M.col(r).norm() == 0)
                            throw shape_error("in block F^{" + lbl(cat, a) + lbl(cat, b) +
                                              lbl(cat, c) + "}_" + lbl(cat, d) +
                                              " (empty row or column)");
                }
}

double validate_unitarity(const CategoryData& cat) {
    int n = cat.rank();
    double res = 0;
    std::vector<BasisTriple> rows, cols;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                for (int d = 0; d < n; ++d) {
                    block_bases(cat, a, b, c, d, rows, cols);
                    if (rows.empty() || rows.size() != cols.size()) continue;
                    Eigen::MatrixXcd M = block_matrix(cat, a, b, c, d, rows, cols);
                    Eigen::MatrixXcd I = Eigen::MatrixXcd::Identity(M.rows(), M.cols());
                    res = std::max(res, (M * M.adjoint() - I).cwiseAbs().maxCoeff());
                }
    return res;
}

double validate_pentagon(const CategoryData& cat) {
    const int n = cat.rank();
    auto prods = product_lists(cat.ring);
    auto P = [&](int x, int y) -> const std::vector<int>& { return prods[x * n + y]; };
    double res = 0;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                for (int d = 0; d < n; ++d)
                    for (int f : P(a, b))
                        for (int g : P(f, c))
                            for (int e : P(g, d))
                                for (int l : P(c, d))
                                    for (int k : P(b, l)) {
                                        if (cat.N(a, k, e) == 0) continue;
                                        // free multiplicity indices
                                        for (int m1 = 0; m1 < cat.N(a, b, f); ++m1)
                                        for (int m2 = 0; m2 < cat.N(f, c, g); ++m2)
                                        for (int m3 = 0; m3 < cat.N(g, d, e); ++m3)
                                        for (int g3 = 0; g3 < cat.N(c, d, l); ++g3)
                                        for (int d3 = 0; d3 < cat.N(b, l, k); ++d3)
                                        for (int d2 = 0; d2 < cat.N(a, k, e); ++d2) {
                                            cplx lhs = 0;
                                            for (int n2 = 0; n2 < cat.N(f, l, e); ++n2)
                                                lhs += cat.F(f, c, d, e, g, l, m2, m3, g3, n2) *
                                                       cat.F(a, b, l, e, f, k, m1, n2, d3, d2);
                                            cplx rhs = 0;
                                            for (int h : P(b, c)) {
                                                if (cat.N(a, h, g) == 0 || cat.N(h, d, k) == 0)
                                                    continue;
                                                for (int g1 = 0; g1 < cat.N(b, c, h); ++g1)
                                                for (int e1 = 0; e1 < cat.N(a, h, g); ++e1)
                                                for (int g2 = 0; g2 < cat.N(h, d, k); ++g2)
                                                    rhs += cat.F(a, b, c, g, f, h, m1, m2, g1, e1) *
                                                           cat.F(a, h, d, e, g, k, e1, m3, g2, d2) *
                                                           cat.F(b, c, d, k, h, l, g1, g2, g3, d3);
                                            }
                                            res = std::max(res, std::abs(lhs - rhs));
                                        }
                                    }
    return res;
}

double validate_hexagon(const CategoryData& cat) {
    if (!cat.rsymbols) throw CategoryError("hexagon check needs R-symbols");
    if (!cat.ring.multiplicity_free())
        throw CategoryError("R-symbols are supported for multiplicity-free categories only");
    const int n = cat.rank();
    double res = 0;
    // R^{ca}_e F^{acb}_d[e,g] R^{cb}_g = sum_f F^{cab}_d[e,f] R^{cf}_d F^{abc}_d[f,g]
    // and the same with every R replaced by its inverse.
    for (int pass = 0; pass < 2; ++pass) {
        auto R = [&](int x, int y, int z) {
            cplx r = cat.R(x, y, z);
            return pass == 0 ? r : std::conj(r);
        };
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                for (int c = 0; c < n; ++c)
                    for (int d = 0; d < n; ++d)
                        for (int e = 0; e < n; ++e)
                            for (int g = 0; g < n; ++g) {
                                if (!cat.N(c, a, e) || !cat.N(e, b, d) || !cat.N(c, b, g) ||
                                    !cat.N(a, g, d))
                                    continue;
                                cplx lhs = R(c, a, e) * cat.F(a, c, b, d, e, g) * R(c, b, g);
                                cplx rhs = 0;
                                for (int f = 0; f < n; ++f)
                                    rhs += cat.F(c, a, b, d, e, f) * R(c, f, d) *
                                           cat.F(a, b, c, d, f, g);
                                res = std::max(res, std::abs(lhs - rhs));
                            }
    }
    return res;
}

void finalize_category(CategoryData& cat) {
    const int n = cat.rank();
    if (static_cast<int>(cat.labels.size()) != n) throw CategoryError("label list has wrong length");
    for (int i = 0; i < n; ++i)
        if (cat.labels[i].id != i) throw CategoryError("label ids must be dense 0..n-1");
    if (static_cast<int>(cat.qdims.size()) != n) throw CategoryError("qdims has wrong length");
    for (double x : cat.qdims)
        if (!(x > 0)) throw CategoryError("quantum dimensions must be positive");

    std::map<SixJKey, cplx> defaults;
    bool mfree = cat.ring.multiplicity_free();
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                for (int d = 0; d < n; ++d) {
                    if (a != 0 && b != 0 && c != 0 && d != 0) continue;
                    for (int e = 0; e < n; ++e)
                        for (int f = 0; f < n; ++f) {
                            int A = cat.N(a, b, e), B = cat.N(e, c, d), C = cat.N(b, c, f),
                                D = cat.N(a, f, d);
                            if (!A || !B || !C || !D) continue;
                            for (int al = 0; al < A; ++al)
                                for (int be = 0; be < B; ++be)
                                    for (int ga = 0; ga < C; ++ga)
                                        for (int de = 0; de < D; ++de) {
                                            cplx v = 0;
                                            if (a == 0) v = be == ga ? 1 : 0;
                                            else if (b == 0) v = be == de ? 1 : 0;
                                            else if (c == 0) v = al == de ? 1 : 0;
                                            else if (mfree) v = 1;
                                            else continue;
                                            defaults[{a, b, c, d, e, f, al, be, ga, de}] = v;
                                        }
                        }
                }
    for (const auto& [k, v] : defaults)
        if (!cat.sixj.entries().count(k)) cat.sixj.set(k, v);
    cat.sixj.finalize(cat.ring);
}

ValidationReport validate_category(const CategoryData& cat, double tol) {
    check_fusion_ring(cat.ring);
    check_sixj_shape(cat);
    ValidationReport rep;
    rep.dims = dims_residual(cat);
    if (rep.dims > tol)
        throw CategoryError("dimension eigenvector mismatch (residual " + std::to_string(rep.dims) + ")");
    rep.unitarity = validate_unitarity(cat);
    if (rep.unitarity > tol)
        throw CategoryError("F-move unitarity residual " + std::to_string(rep.unitarity) +
                            " above tolerance");
    rep.pentagon = validate_pentagon(cat);
    if (rep.pentagon > tol)
        throw CategoryError("pentagon residual " + std::to_string(rep.pentagon) +
                            " above tolerance");
    if (cat.rsymbols) {
        rep.hexagon = validate_hexagon(cat);
        if (*rep.hexagon > tol)
            throw CategoryError("hexagon residual " + std::to_string(*rep.hexagon) +
                                " above tolerance");
    }
    return rep;
}

// ---------------------------------------------------------------- JSON

using nlohmann::json;

CategoryData category_from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw CategoryError(std::string("parse error: ") + e.what());
    }
    try {
        CategoryData cat;
        cat.name = j.value("name", std::string("custom"));
        for (const auto& l : j.at("labels")) {
            Label L;
            L.id = l.at("id").get<int>();
            L.name = l.value("name", std::to_string(L.id));
            cat.labels.push_back(L);
        }
        int n = static_cast<int>(cat.labels.size());
        cat.ring.n = n;
        cat.ring.dual = j.at("dual").get<std::vector<int>>();
        cat.ring.N.assign(n * n * n, 0);
        auto in_range = [n](int x) { return x >= 0 && x < n; };
        for (const auto& f : j.at("fusion")) {
            int a = f.at("i"), b = f.at("j"), c = f.at("k");
            if (!in_range(a) || !in_range(b) || !in_range(c))
                throw CategoryError("fusion entry label out of range");
            cat.ring.mult_ref(a, b, c) = f.at("mult").get<int>();
        }
        check_fusion_ring(cat.ring);
        cat.qdims = j.at("qdims").get<std::vector<double>>();
        for (const auto& s : j.at("sixj")) {
            auto lab = s.at("labels").get<std::vector<int>>();
            if (lab.size() != 6) throw CategoryError("sixj entry needs 6 labels");
            std::vector<int> basis = s.contains("basis") ? s.at("basis").get<std::vector<int>>()
                                                         : std::vector<int>{0, 0, 0, 0};
            if (basis.size() != 4) throw CategoryError("sixj basis needs 4 indices");
            for (int x : lab)
                if (!in_range(x)) throw CategoryError("sixj label out of range");
            SixJKey k{lab[0], lab[1], lab[2], lab[3], lab[4], lab[5],
                      basis[0], basis[1], basis[2], basis[3]};
            cat.sixj.set(k, cplx(s.value("re", 0.0), s.value("im", 0.0)));
        }
        if (j.contains("rsymbols") && !j["rsymbols"].is_null()) {
            std::map<std::array<int, 3>, cplx> R;
            for (const auto& r : j["rsymbols"]) {
                auto lab = r.at("labels").get<std::vector<int>>();
                if (lab.size() != 3) throw CategoryError("rsymbol entry needs 3 labels");
                R[{lab[0], lab[1], lab[2]}] = cplx(r.value("re", 0.0), r.value("im", 0.0));
            }
            cat.rsymbols = R;
        }
        finalize_category(cat);
        return cat;
    } catch (const json::exception& e) {
        throw CategoryError(std::string("parse error: ") + e.what());
    }
}

CategoryData load_category(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw CategoryError("cannot open category file " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    CategoryData cat = category_from_json_text(ss.str());
    validate_category(cat);
    return cat;
}

std::string category_to_json_text(const CategoryData& cat) {
    json j;
    j["name"] = cat.name;
    j["labels"] = json::array();
    for (const auto& l : cat.labels) j["labels"].push_back({{"id", l.id}, {"name", l.name}});
    j["dual"] = cat.ring.dual;
    j["fusion"] = json::array();
    int n = cat.rank();
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                if (cat.N(a, b, c))
                    j["fusion"].push_back({{"i", a}, {"j", b}, {"k", c}, {"mult", cat.N(a, b, c)}});
    j["qdims"] = cat.qdims;
    j["sixj"] = json::array();
    for (const auto& [k, v] : cat.sixj.entries()) {
        if (v == cplx(0, 0)) continue;
        json e = {{"labels", {k[0], k[1], k[2], k[3], k[4], k[5]}}, {"re", v.real()}, {"im", v.imag()}};
        if (k[6] | k[7] | k[8] | k[9]) e["basis"] = {k[6], k[7], k[8], k[9]};
        j["sixj"].push_back(e);
    }
    if (cat.rsymbols) {
        j["rsymbols"] = json::array();
        for (const auto& [k, v] : *cat.rsymbols)
            j["rsymbols"].push_back({{"labels", {k[0], k[1], k[2]}}, {"re", v.real()}, {"im", v.imag()}});
    }
    return j.dump(1);
}

}  // namespace doubletop
