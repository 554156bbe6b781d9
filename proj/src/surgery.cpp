#include "doubletop/surgery.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>

#include <omp.h>
#include <json.hpp>

namespace doubletop {

namespace {

int find_root(std::vector<int>& p, int x) {
    while (p[x] != x) x = p[x] = p[p[x]];
    return x;
}

uint64_t count_colorings(int r, int m, uint64_t budget) {
    uint64_t total = 1;
    for (int v = 0; v < m; ++v) {
        if (total > budget / static_cast<uint64_t>(r))
            throw BudgetError("enumeration of " + std::to_string(r) + "^" + std::to_string(m) +
                              " colorings exceeds budget " + std::to_string(budget));
        total *= static_cast<uint64_t>(r);
    }
    return total;
}

// Precomputed factors for the closed form.
struct Evaluator {
    const Mat& S;
    const Vec& t;
    const PlumbingGraph& g;
    std::vector<int> deg;
    cplx global;
    int r;

    Evaluator(const Mat& S_, const Vec& t_, const PlumbingGraph& g_) : S(S_), t(t_), g(g_) {
        deg = g.degrees();
        global = std::pow(S(0, 0), 1 - g.components());
        r = static_cast<int>(S.rows());
    }

    cplx J(const std::vector<int>& col) const {
        cplx v = global;
        for (int i = 0; i < g.size(); ++i) {
            int c = col[i];
            v *= std::pow(t[c], -g.vertices[i].framing) * std::pow(S(0, c), 1 - deg[i]);
        }
        for (const auto& e : g.edges) {
            cplx s = S(col[e.u], col[e.v]);
            v *= e.sign < 0 ? std::conj(s) : s;
        }
        return v;
    }
};

void decode(uint64_t idx, int r, std::vector<int>& col) {
    for (int i = static_cast<int>(col.size()) - 1; i >= 0; --i) {
        col[i] = static_cast<int>(idx % r);
        idx /= r;
    }
}

void advance(int r, std::vector<int>& col) {
    int i = static_cast<int>(col.size()) - 1;
    while (i >= 0 && ++col[i] == r) col[i--] = 0;
}

// sum over colorings of weight(col) * J(col), chunked by worker rank
template <class Weight>
cplx enumerate(const Evaluator& ev, uint64_t budget, int workers, Weight weight) {
    const int m = ev.g.size();
    uint64_t total = count_colorings(ev.r, m, budget);
    int W = workers > 0 ? workers : omp_get_max_threads();
    if (static_cast<uint64_t>(W) > total) W = static_cast<int>(total);
    std::vector<cplx> partial(W);
#pragma omp parallel for num_threads(W) schedule(static, 1)
    for (int w = 0; w < W; ++w) {
        uint64_t lo = total / W * w + std::min<uint64_t>(w, total % W);
        uint64_t hi = lo + total / W + (static_cast<uint64_t>(w) < total % W ? 1 : 0);
        std::vector<int> col(m);
        decode(lo, ev.r, col);
        KahanSum acc;
        for (uint64_t i = lo; i < hi; ++i) {
            acc.add(weight(col) * ev.J(col));
            advance(ev.r, col);
        }
        partial[w] = acc.sum;
    }
    KahanSum acc;
    for (int w = 0; w < W; ++w) acc.add(partial[w]);
    return acc.sum;
}

void check_graph(const PlumbingGraph& g, bool strict_trees) {
    if (g.vertices.empty()) throw PlumbingError("empty plumbing graph");
    validate_plumbing(g);
    if (strict_trees && g.has_cycle()) throw PlumbingError("graph has a cycle (refused under --strict-trees)");
}

}  // namespace

std::vector<int> PlumbingGraph::degrees() const {
    std::vector<int> d(vertices.size(), 0);
    for (const auto& e : edges) {
        ++d[e.u];
        ++d[e.v];
    }
    return d;
}

int PlumbingGraph::components() const {
    std::vector<int> p(vertices.size());
    std::iota(p.begin(), p.end(), 0);
    int c = size();
    for (const auto& e : edges) {
        int a = find_root(p, e.u), b = find_root(p, e.v);
        if (a != b) {
            p[a] = b;
            --c;
        }
    }
    return c;
}

bool PlumbingGraph::has_cycle() const {
    return static_cast<int>(edges.size()) != size() - components();
}

Eigen::MatrixXd PlumbingGraph::linking_matrix() const {
    Eigen::MatrixXd B = Eigen::MatrixXd::Zero(size(), size());
    for (int i = 0; i < size(); ++i) B(i, i) = vertices[i].framing;
    for (const auto& e : edges) {
        B(e.u, e.v) += e.sign;
        B(e.v, e.u) += e.sign;
    }
    return B;
}

void validate_plumbing(const PlumbingGraph& g) {
    std::map<int, int> ids;
    for (const auto& v : g.vertices)
        if (!ids.emplace(v.id, 0).second) throw PlumbingError("duplicate vertex id " + std::to_string(v.id));
    for (const auto& e : g.edges) {
        if (e.u < 0 || e.u >= g.size() || e.v < 0 || e.v >= g.size())
            throw PlumbingError("edge refers to a missing vertex");
        if (e.u == e.v) throw PlumbingError("self-loop at vertex " + std::to_string(g.vertices[e.u].id));
        if (e.sign != 1 && e.sign != -1) throw PlumbingError("edge sign must be +-1");
    }
}

using nlohmann::json;

PlumbingGraph plumbing_from_json_text(const std::string& text) {
    try {
        json j = json::parse(text);
        PlumbingGraph g;
        g.name = j.value("name", std::string("custom"));
        std::map<int, int> index;
        for (const auto& v : j.at("vertices")) {
            PlumbingVertex pv{v.at("id").get<int>(), v.at("framing").get<int>()};
            if (index.count(pv.id)) throw PlumbingError("duplicate vertex id " + std::to_string(pv.id));
            index[pv.id] = g.size();
            g.vertices.push_back(pv);
        }
        if (j.contains("edges"))
            for (const auto& e : j["edges"]) {
                auto a = e.get<std::vector<int>>();
                if (a.size() != 2 && a.size() != 3) throw PlumbingError("edge needs [u,v] or [u,v,sign]");
                if (!index.count(a[0]) || !index.count(a[1]))
                    throw PlumbingError("edge refers to a missing vertex");
                g.edges.push_back({index[a[0]], index[a[1]], a.size() == 3 ? a[2] : 1});
            }
        validate_plumbing(g);
        return g;
    } catch (const json::exception& e) {
        throw PlumbingError(std::string("parse error: ") + e.what());
    }
}

PlumbingGraph load_plumbing(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw PlumbingError("cannot open plumbing file " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return plumbing_from_json_text(ss.str());
}

std::string plumbing_to_json_text(const PlumbingGraph& g) {
    json j;
    j["name"] = g.name;
    j["vertices"] = json::array();
    for (const auto& v : g.vertices) j["vertices"].push_back({{"id", v.id}, {"framing", v.framing}});
    j["edges"] = json::array();
    for (const auto& e : g.edges) {
        json a = {g.vertices[e.u].id, g.vertices[e.v].id};
        if (e.sign != 1) a.push_back(e.sign);
        j["edges"].push_back(a);
    }
    return j.dump(1);
}

PlumbingGraph lens_chain(int p, int q) {
    if (!(p > q && q >= 1) || std::gcd(p, q) != 1)
        throw PlumbingError("lens_chain needs p > q >= 1 with gcd(p,q) = 1");
    PlumbingGraph g;
    g.name = "lens_" + std::to_string(p) + "_" + std::to_string(q);
    while (q != 0) {
        int a = (p + q - 1) / q;
        int id = g.size();
        g.vertices.push_back({id, a});
        if (id > 0) g.edges.push_back({id - 1, id, 1});
        int nq = a * q - p;
        p = q;
        q = nq;
    }
    return g;
}

std::vector<std::string> builtin_plumbing_names() {
    return {"s3", "s2s1", "rp3", "l31", "l32", "l41", "l52"};
}

PlumbingGraph builtin_plumbing(const std::string& name) {
    auto single = [&](int f) {
        PlumbingGraph g;
        g.name = name;
        g.vertices.push_back({0, f});
        return g;
    };
    if (name == "s3") return single(1);
    if (name == "s2s1") return single(0);
    if (name == "rp3") return single(2);
    if (name == "l31") return lens_chain(3, 1);
    if (name == "l32") return lens_chain(3, 2);
    if (name == "l41") return lens_chain(4, 1);
    if (name == "l52") return lens_chain(5, 2);
    int p = 0, q = 0;
    char tail = 0;
    if (std::sscanf(name.c_str(), "lens_%d_%d%c", &p, &q, &tail) == 2) return lens_chain(p, q);
    throw PlumbingError("unknown builtin plumbing '" + name + "'");
}

int signature(const PlumbingGraph& g) {
    if (g.vertices.empty()) return 0;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(g.linking_matrix(), Eigen::EigenvaluesOnly);
    int s = 0;
    for (int i = 0; i < es.eigenvalues().size(); ++i) {
        double ev = es.eigenvalues()[i];
        if (ev > 1e-9) ++s;
        else if (ev < -1e-9) --s;
    }
    return s;
}

cplx colored_invariant(const Mat& S, const Vec& t, const PlumbingGraph& g, const std::vector<int>& colors) {
    if (static_cast<int>(colors.size()) != g.size()) throw PlumbingError("coloring must cover every vertex");
    return Evaluator(S, t, g).J(colors);
}

cplx colored_invariant(const ModularData& md, const PlumbingGraph& g, const std::vector<int>& colors) {
    return colored_invariant(md.S, md.t, g, colors);
}

cplx surgery_invariant(const ModularData& md, const PlumbingGraph& g, const SurgeryOptions& opt) {
    check_graph(g, opt.strict_trees);
    Evaluator ev(md.S, md.t, g);
    return enumerate(ev, opt.budget, opt.workers, [&](const std::vector<int>& col) {
        cplx w = 1.0;
        for (int c : col) w *= md.S(c, 0);
        return w;
    });
}

cplx surgery_invariant_serial(const ModularData& md, const PlumbingGraph& g, uint64_t budget) {
    check_graph(g, false);
    Evaluator ev(md.S, md.t, g);
    uint64_t total = count_colorings(ev.r, g.size(), budget);
    std::vector<int> col(g.size(), 0);
    KahanSum acc;
    for (uint64_t i = 0; i < total; ++i) {
        cplx w = 1.0;
        for (int c : col) w *= md.S(c, 0);
        acc.add(w * ev.J(col));
        advance(ev.r, col);
    }
    return acc.sum;
}

cplx rt_formula(const Mat& S, const Vec& t, const PlumbingGraph& g, const SurgeryOptions& opt) {
    check_graph(g, opt.strict_trees);
    const int r = static_cast<int>(S.rows());
    const cplx s00 = S(0, 0);
    std::vector<cplx> dim(r);
    cplx gauss_plus = 0;
    for (int i = 0; i < r; ++i) {
        dim[i] = S(0, i) / s00;
        gauss_plus += std::norm(dim[i]) / t[i];
    }
    const double D = 1.0 / s00.real();
    const int sigma = signature(g);
    const int m = g.size();
    Evaluator ev(S, t, g);
    cplx sum = enumerate(ev, opt.budget, opt.workers, [&](const std::vector<int>& col) {
        cplx w = 1.0 / s00;
        for (int c : col) w *= dim[c];
        return w;
    });
    return std::pow(gauss_plus, sigma) * std::pow(D, -sigma - m - 1) * sum;
}

cplx rt_invariant(const ModularData& md, const PlumbingGraph& g, const SurgeryOptions& opt) {
    cplx tau = rt_formula(md.S, md.t, g, opt);
    cplx Z = surgery_invariant(md, g, opt);
    if (std::abs(tau - Z) >= 1e-8)
        throw ToleranceError("surgery formula and RT normalization disagree: |tau - Z| = " +
                             std::to_string(std::abs(tau - Z)));
    return tau;
}

SurgeryResult evaluate_surgery(const ModularData& md, const PlumbingGraph& g, const SurgeryOptions& opt) {
    SurgeryResult r;
    r.Z = surgery_invariant(md, g, opt);
    r.tau = rt_invariant(md, g, opt);
    r.sigma = signature(g);
    r.components = g.size();
    r.colorings = count_colorings(md.rank, g.size(), opt.budget);
    return r;
}

PlumbingGraph blow_up(const PlumbingGraph& g, const BlowUpSite& site) {
    if (site.eps != 1 && site.eps != -1) throw PlumbingError("blow-up framing must be +-1");
    PlumbingGraph out = g;
    int new_id = 0;
    for (const auto& v : g.vertices) new_id = std::max(new_id, v.id + 1);
    int x = out.size();
    out.vertices.push_back({new_id, site.eps});
    switch (site.kind) {
        case BlowUpSite::Isolated:
            break;
        case BlowUpSite::Vertex:
            if (site.index < 0 || site.index >= g.size()) throw PlumbingError("ineligible site");
            out.vertices[site.index].framing += site.eps;
            out.edges.push_back({site.index, x, 1});
            break;
        case BlowUpSite::Edge: {
            if (site.index < 0 || site.index >= static_cast<int>(g.edges.size()))
                throw PlumbingError("ineligible site");
            PlumbingEdge e = g.edges[site.index];
            out.edges.erase(out.edges.begin() + site.index);
            out.vertices[e.u].framing += site.eps;
            out.vertices[e.v].framing += site.eps;
            out.edges.push_back({e.u, x, 1});
            out.edges.push_back({x, e.v, -site.eps * e.sign});
            break;
        }
    }
    return out;
}

PlumbingGraph blow_down(const PlumbingGraph& g, int x) {
    if (x < 0 || x >= g.size()) throw PlumbingError("ineligible site");
    const int eps = g.vertices[x].framing;
    if (eps != 1 && eps != -1) throw PlumbingError("ineligible site: framing is not +-1");
    std::vector<PlumbingEdge> incident, rest;
    for (const auto& e : g.edges) (e.u == x || e.v == x ? incident : rest).push_back(e);
    if (incident.size() > 2) throw PlumbingError("ineligible site: degree above 2");
    auto other = [&](const PlumbingEdge& e) { return e.u == x ? e.v : e.u; };
    if (incident.size() == 2 && other(incident[0]) == other(incident[1]))
        throw PlumbingError("ineligible site: both clasps go to one neighbour");
    PlumbingGraph out;
    out.name = g.name;
    out.vertices = g.vertices;
    out.edges = rest;
    for (const auto& e : incident) out.vertices[other(e)].framing -= eps;
    if (incident.size() == 2)
        out.edges.push_back({other(incident[0]), other(incident[1]), -eps * incident[0].sign * incident[1].sign});
    // drop x and reindex
    out.vertices.erase(out.vertices.begin() + x);
    for (auto& e : out.edges) {
        if (e.u > x) --e.u;
        if (e.v > x) --e.v;
    }
    return out;
}

cplx modular_tau(const Mat& S, const Vec& t, const PlumbingGraph& g) {
    const int r = static_cast<int>(S.rows());
    if (S.cols() != r || t.size() != r) throw ToleranceError("S and T sizes differ");
    double res = (S * S.adjoint() - Mat::Identity(r, r)).cwiseAbs().maxCoeff();
    if (res > 1e-8) throw ToleranceError("supplied S is not unitary (residual " + std::to_string(res) + ")");
    return rt_formula(S, t, g);
}

double abelian_oracle(const PlumbingGraph& g, int n, uint64_t budget) {
    const int m = g.size();
    uint64_t total = count_colorings(n, m, budget);
    Eigen::MatrixXd Bd = g.linking_matrix();
    std::vector<long> B(Bd.size());
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) B[i * m + j] = std::lround(Bd(i, j));
    std::vector<int> x(m, 0);
    uint64_t hits = 0;
    for (uint64_t k = 0; k < total; ++k) {
        bool ok = true;
        for (int i = 0; i < m && ok; ++i) {
            long s = 0;
            for (int j = 0; j < m; ++j) s += B[i * m + j] * x[j];
            ok = ((s % n) + n) % n == 0;
        }
        hits += ok;
        advance(n, x);
    }
    // each independent cycle of the graph contributes a free Z to H_1
    int b1 = static_cast<int>(g.edges.size()) - m + g.components();
    return static_cast<double>(hits) * std::pow(static_cast<double>(n), b1) / n;
}

PlumbingGraph random_plumbing(std::mt19937_64& rng, int max_vertices, int lo, int hi) {
    std::uniform_int_distribution<int> nv(1, max_vertices), fr(lo, hi), coin(0, 3);
    PlumbingGraph g;
    g.name = "random";
    int m = nv(rng);
    for (int i = 0; i < m; ++i) g.vertices.push_back({i, fr(rng)});
    for (int i = 1; i < m; ++i) {
        // attach to an earlier vertex or start a new tree
        if (coin(rng) == 0) continue;
        std::uniform_int_distribution<int> parent(0, i - 1);
        g.edges.push_back({parent(rng), i, coin(rng) == 1 ? -1 : 1});
    }
    return g;
}

BlowUpSite random_site(std::mt19937_64& rng, const PlumbingGraph& g) {
    std::uniform_int_distribution<int> kind(0, 2), sign(0, 1);
    BlowUpSite s;
    s.eps = sign(rng) ? 1 : -1;
    int k = kind(rng);
    if (k == 2 && g.edges.empty()) k = 1;
    if (k == 1 && g.vertices.empty()) k = 0;
    s.kind = static_cast<BlowUpSite::Kind>(k);
    if (k == 1) s.index = std::uniform_int_distribution<int>(0, g.size() - 1)(rng);
    if (k == 2) s.index = std::uniform_int_distribution<int>(0, static_cast<int>(g.edges.size()) - 1)(rng);
    return s;
}

}  // namespace doubletop
