#include "doubletop/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <memory>

#include "doubletop/modular.hpp"
#include "doubletop/statesum.hpp"
#include "doubletop/surgery.hpp"

namespace doubletop {

namespace {

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.1e", x);
    return buf;
}

struct Check {
    bool ok = true;
    std::string first_failure;
    void require(bool cond, const std::string& what) {
        if (!cond && ok) {
            ok = false;
            first_failure = what;
        }
    }
};

struct Context {
    AcceptanceOptions opt;
    std::map<std::string, std::unique_ptr<Pipeline>> pipes;

    const Pipeline& pipe(const std::string& name) {
        auto& p = pipes[name];
        if (!p) p = run_pipeline(zoo(name), opt.seed);
        return *p;
    }
};

using Body = std::function<std::string(Context&, Check&)>;

std::string c1_category_gate(Context&, Check& ck) {
    double pent = 0, unit = 0;
    for (const auto& n : zoo_names()) {
        auto rep = validate_category(zoo(n));
        ck.require(rep.pentagon < 1e-9 && rep.unitarity < 1e-9, n);
        pent = std::max(pent, rep.pentagon);
        unit = std::max(unit, rep.unitarity);
    }
    return "max pentagon " + fmt(pent) + ", unitarity " + fmt(unit);
}

std::string c2_tube_structure(Context& cx, Check& ck) {
    const std::map<std::string, std::pair<int, std::vector<int>>> expect = {
        {"vec_z2", {4, {1, 1, 1, 1}}},
        {"vec_z3", {9, {1, 1, 1, 1, 1, 1, 1, 1, 1}}},
        {"fibonacci", {7, {1, 1, 1, 2}}},
    };
    std::string detail;
    for (const auto& n : zoo_names()) {
        const auto& p = cx.pipe(n);
        auto dims = p.dec.block_dims;
        int sq = 0;
        for (int d : dims) sq += d * d;
        ck.require(sq == p.alg->dim(), n + ": sum n^2 != dim");
        auto it = expect.find(n);
        if (it != expect.end()) {
            std::sort(dims.begin(), dims.end());
            ck.require(p.alg->dim() == it->second.first, n + ": tube dim");
            ck.require(dims == it->second.second, n + ": block dims");
        }
        detail += (detail.empty() ? "" : ", ") + n + " dim " + std::to_string(p.alg->dim()) + "/" +
                  std::to_string(p.dec.blocks()) + " blocks";
    }
    return detail;
}

std::string c3_projection_pairing(Context& cx, Check& ck) {
    double worst = 0;
    for (const auto& n : zoo_names()) {
        const auto& p = cx.pipe(n);
        for (int i = 0; i < p.dec.blocks(); ++i)
            for (int j = 0; j < p.dec.blocks(); ++j) {
                double want = i == j ? p.dec.block_dims[i] * p.dec.block_dims[i] : 0.0;
                double err = std::abs(p.alg->tqft_inner(p.dec.projections[i], p.dec.projections[j]) - want);
                worst = std::max(worst, err);
            }
        ck.require(worst < 1e-8, n);
    }
    return "max |<pi_i,pi_j> - delta n_i^2| " + fmt(worst);
}

std::string c4_verlinde_axioms(Context& cx, Check& ck) {
    double worst = 0;
    for (const auto& n : zoo_names()) {
        const auto& md = cx.pipe(n).md;
        try {
            assert_verlinde_axioms(md);
        } catch (const std::exception& e) {
            ck.require(false, n + ": " + e.what());
        }
        for (const auto& [k, v] : md.residuals.values)
            if (k != "s_row0_min" && k.find("rounding") == std::string::npos) worst = std::max(worst, v);
    }
    return "max axiom residual " + fmt(worst);
}

std::string c5_pants_vs_verlinde(Context& cx, Check& ck) {
    double rounding = 0;
    for (const auto& n : zoo_names()) {
        const auto& p = cx.pipe(n);
        auto v = verlinde_fusion(p.md.S);
        ck.require(v.N == p.pants.N, n);
        rounding = std::max({rounding, v.max_rounding, p.pants.max_rounding});
    }
    return "identical on all zoo categories, max rounding " + fmt(rounding);
}

std::string c6_group_oracle(Context& cx, Check& ck) {
    for (int n : {2, 3}) {
        auto perm = match_permutation(cx.pipe("vec_z" + std::to_string(n)).md, group_double_oracle(n), 1e-8);
        ck.require(!perm.empty(), "vec_z" + std::to_string(n));
    }
    return "D(Z/2), D(Z/3) matched up to permutation";
}

std::string c7_state_sums(Context& cx, Check& ck) {
    StateSumOptions so;
    so.workers = cx.opt.workers;
    double worst = 0;
    auto expect = [&](const std::string& cat, const std::string& tri, double want) {
        double err = std::abs(state_sum(zoo(cat), builtin_triangulation(tri), so) - want);
        worst = std::max(worst, err);
        ck.require(err < 1e-8, cat + " on " + tri);
    };
    for (const auto& n : zoo_names()) {
        const auto& p = cx.pipe(n);
        expect(n, "s3", 1.0 / global_dim(*p.cat));
        expect(n, "s2s1", 1.0);
        expect(n, "t3", p.md.rank);
    }
    expect("vec_z2", "rp3", 1.0);
    expect("vec_z2", "l31", 0.5);
    expect("vec_z3", "l31", 1.0);
    for (int g : {2, 3}) {
        auto cat = zoo("vec_z" + std::to_string(g));
        for (const auto& t : builtin_triangulation_names()) {
            auto tri = builtin_triangulation(t);
            double err = std::abs(state_sum(cat, tri, so) - dw_oracle(cyclic_group(g), tri).value());
            worst = std::max(worst, err);
            ck.require(err < 1e-8, "dw oracle vec_z" + std::to_string(g) + " on " + t);
        }
    }
    return "max deviation " + fmt(worst);
}

std::string c8_compare(Context& cx, Check& ck) {
    const std::vector<std::pair<std::string, PlumbingGraph>> spaces = {
        {"s3", builtin_plumbing("s3")},   {"s2s1", builtin_plumbing("s2s1")}, {"rp3", lens_chain(2, 1)},
        {"l31", lens_chain(3, 1)},        {"l41", lens_chain(4, 1)},
    };
    StateSumOptions so;
    so.workers = cx.opt.workers;
    SurgeryOptions su;
    su.workers = cx.opt.workers;
    double worst = 0;
    for (const auto& n : zoo_names()) {
        const auto& p = cx.pipe(n);
        for (const auto& [tri, g] : spaces) {
            cplx a = state_sum(*p.cat, builtin_triangulation(tri), so);
            cplx b = surgery_invariant(p.md, g, su);
            worst = std::max(worst, std::abs(a - b));
            ck.require(std::abs(a - b) < 1e-8, n + " on " + tri);
        }
    }
    return "25 pairs, max |statesum - surgery| " + fmt(worst);
}

std::string c9_rt_identity(Context& cx, Check& ck) {
    std::mt19937_64 rng(cx.opt.rng_seed);
    SurgeryOptions su;
    su.workers = cx.opt.workers;
    double worst = 0, gauss = 0;
    for (const auto& n : zoo_names()) {
        const auto& md = cx.pipe(n).md;
        for (int k = 0; k < 25; ++k) {
            auto g = random_plumbing(rng);
            cplx Z = surgery_invariant(md, g, su);
            cplx tau = rt_formula(md.S, md.t, g, su);
            worst = std::max(worst, std::abs(tau - Z));
            ck.require(std::abs(tau - Z) < 1e-8, n + ": rt != surgery");
        }
        double inv = 1.0 / md.S(0, 0).real();
        for (double err : {std::abs(md.gauss_plus - md.lambda), std::abs(md.gauss_minus - md.lambda),
                           std::abs(inv - md.lambda), std::abs(md.D - md.lambda)}) {
            gauss = std::max(gauss, err);
            ck.require(err < 1e-8, n + ": Gauss sums");
        }
    }
    return "100 graphs, max |tau - Z| " + fmt(worst) + ", Gauss/D/lambda " + fmt(gauss);
}

std::string c10_kirby(Context& cx, Check& ck) {
    std::mt19937_64 rng(cx.opt.rng_seed + 1);
    SurgeryOptions su;
    su.workers = cx.opt.workers;
    double worst = 0;
    for (const auto& n : zoo_names()) {
        const auto& md = cx.pipe(n).md;
        for (int k = 0; k < 20; ++k) {
            auto g = random_plumbing(rng, 4);
            auto up = blow_up(g, random_site(rng, g));
            auto down = blow_down(up, up.size() - 1);
            cplx z0 = surgery_invariant(md, g, su);
            double err = std::max(std::abs(surgery_invariant(md, up, su) - z0),
                                  std::abs(surgery_invariant(md, down, su) - z0));
            worst = std::max(worst, err);
            ck.require(err < 1e-9, n + ": blow-up changed the invariant");
        }
    }
    return "80 pairs, max change " + fmt(worst);
}

std::string c11_ising_split(Context& cx, Check& ck) {
    auto braided = modular_data_from_rsymbols(zoo("ising"));
    const auto& dbl = cx.pipe("ising").md;
    std::mt19937_64 rng(cx.opt.rng_seed + 2);
    std::vector<PlumbingGraph> graphs = {builtin_plumbing("s3"), lens_chain(2, 1), lens_chain(3, 1),
                                         lens_chain(5, 2)};
    while (graphs.size() < 10) graphs.push_back(random_plumbing(rng));
    double worst = 0;
    for (const auto& g : graphs) {
        double err = std::abs(std::norm(modular_tau(braided.S, braided.t, g)) - surgery_invariant(dbl, g));
        worst = std::max(worst, err);
        ck.require(err < 1e-8, "ising on " + g.name);
    }
    return "10 graphs, max ||tau|^2 - Z_double| " + fmt(worst);
}

std::string c12_determinism(Context& cx, Check& ck) {
    std::string detail;
    for (const auto& n : zoo_names()) {
        auto other = run_pipeline(zoo(n), cx.opt.seed + 1);
        auto perm = match_permutation(cx.pipe(n).md, other->md, 1e-8);
        ck.require(!perm.empty(), n + ": no common ordering");
        bool identity = true;
        for (int i = 0; i < static_cast<int>(perm.size()); ++i) identity = identity && perm[i] == i;
        detail += (detail.empty() ? "" : ", ") + n + (identity ? " identical" : " permuted");
    }
    return "seeds " + std::to_string(cx.opt.seed) + "/" + std::to_string(cx.opt.seed + 1) + ": " + detail;
}

}  // namespace

uint64_t seed_from_env() {
    const char* s = std::getenv("DOUBLETOP_SEED");
    if (!s || !*s) return kDefaultSeed;
    char* end = nullptr;
    unsigned long long v = std::strtoull(s, &end, 0);
    return (end && *end == '\0') ? v : kDefaultSeed;
}

std::vector<CriterionResult> run_acceptance(std::ostream& out, const AcceptanceOptions& opt) {
    const std::vector<std::pair<std::string, Body>> criteria = {
        {"category gate", c1_category_gate},
        {"tube structure", c2_tube_structure},
        {"projection pairing", c3_projection_pairing},
        {"verlinde basis axioms", c4_verlinde_axioms},
        {"pants dims equal verlinde fusion", c5_pants_vs_verlinde},
        {"group double oracle", c6_group_oracle},
        {"state sum values", c7_state_sums},
        {"surgery equals state sum", c8_compare},
        {"rt normalization identity", c9_rt_identity},
        {"kirby invariance", c10_kirby},
        {"ising split", c11_ising_split},
        {"seed independence", c12_determinism},
    };
    Context cx;
    cx.opt = opt;
    std::vector<CriterionResult> results;
    for (size_t k = 0; k < criteria.size(); ++k) {
        CriterionResult r;
        r.id = static_cast<int>(k + 1);
        r.name = criteria[k].first;
        auto t0 = std::chrono::steady_clock::now();
        Check ck;
        try {
            r.detail = criteria[k].second(cx, ck);
            r.pass = ck.ok;
            if (!ck.ok) r.detail = ck.first_failure + "; " + r.detail;
        } catch (const std::exception& e) {
            r.pass = false;
            r.detail = std::string("exception: ") + e.what();
        }
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        out << (r.pass ? "PASS " : "FAIL ") << (r.id < 10 ? " " : "") << r.id << " " << r.name << ": "
            << r.detail << "\n";
        out.flush();
        results.push_back(std::move(r));
    }
    return results;
}

}  // namespace doubletop
