#include <CLI11.hpp>

#include <iostream>
#include <sstream>

#include "doubletop/acceptance.hpp"
#include "doubletop/modular.hpp"
#include "doubletop/report.hpp"
#include "doubletop/statesum.hpp"
#include "doubletop/surgery.hpp"

using namespace doubletop;

namespace {

enum Exit { kOk = 0, kValidation = 1, kTolerance = 2, kBudget = 3 };

struct Args {
    std::string category, statesum, surgery, dump;
    int workers = 0;
    double budget = 1e8;
    bool strict_trees = false;
    double tolerance = 1e-8;
    bool timings = false;
};

// "scheme:name" -> (scheme, name); plain paths give an empty scheme
std::pair<std::string, std::string> split_uri(const std::string& uri) {
    for (const char* scheme : {"zoo", "builtin"}) {
        std::string prefix = std::string(scheme) + ":";
        if (uri.rfind(prefix, 0) == 0) return {scheme, uri.substr(prefix.size())};
    }
    return {"", uri};
}

CategoryData resolve_category(const std::string& uri) {
    if (uri.empty()) throw CategoryError("--category is required");
    auto [scheme, name] = split_uri(uri);
    return scheme.empty() ? load_category(name) : zoo(name);
}

Triangulation resolve_triangulation(const std::string& uri) {
    auto [scheme, name] = split_uri(uri);
    return scheme.empty() ? load_triangulation(name) : builtin_triangulation(name);
}

PlumbingGraph resolve_plumbing(const std::string& uri) {
    auto [scheme, name] = split_uri(uri);
    return scheme.empty() ? load_plumbing(name) : builtin_plumbing(name);
}

uint64_t budget_of(const Args& a) {
    if (!(a.budget >= 1)) throw BudgetError("--budget must be at least 1");
    return static_cast<uint64_t>(a.budget);
}

void add_validation(RunReport& rep, const CategoryData& cat) {
    auto v = validate_category(cat);
    rep.fingerprint = category_fingerprint(cat);
    rep.residuals["pentagon"] = v.pentagon;
    rep.residuals["unitarity"] = v.unitarity;
    rep.residuals["dimensions"] = v.dims;
    if (v.hexagon) rep.residuals["hexagon"] = *v.hexagon;
}

void add_tube_residuals(RunReport& rep, const CenterDecomposition& dec) {
    rep.residuals["center_idempotent"] = dec.idempotent_residual;
    rep.residuals["center_orthogonality"] = dec.orthogonality_residual;
    rep.residuals["center_sum"] = dec.sum_residual;
    rep.residuals["block_integrality"] = dec.integrality_residual;
}

std::unique_ptr<Pipeline> pipeline_for(RunReport& rep, const CategoryData& cat) {
    {
        StageTimer t(rep, "validate");
        add_validation(rep, cat);
    }
    StageTimer t(rep, "pipeline");
    auto p = run_pipeline(cat, seed_from_env());
    add_tube_residuals(rep, p->dec);
    for (const auto& [k, v] : p->md.residuals.values) rep.residuals[k] = v;
    return p;
}

int cmd_validate(const Args& a, RunReport& rep) {
    auto cat = resolve_category(a.category);
    StageTimer t(rep, "validate");
    add_validation(rep, cat);
    json labels = json::array();
    for (const auto& l : cat.labels) labels.push_back(l.name);
    rep.results = {{"name", cat.name}, {"rank", cat.rank()}, {"labels", labels},
                   {"global_dim", global_dim(cat)}, {"multiplicity_free", cat.ring.multiplicity_free()},
                   {"valid", true}};
    return kOk;
}

int cmd_center(const Args& a, RunReport& rep) {
    auto cat = resolve_category(a.category);
    {
        StageTimer t(rep, "validate");
        add_validation(rep, cat);
    }
    StageTimer t(rep, "center");
    TubeAlgebra alg(cat);
    auto dec = center_decompose(alg, seed_from_env());
    add_tube_residuals(rep, dec);
    json blocks = json::array();
    for (int i = 0; i < dec.blocks(); ++i)
        blocks.push_back({{"n_i", dec.block_dims[i]}, {"vacuum_pairing", dec.vacuum_pairing[i]}});
    rep.results = {{"dim", alg.dim()}, {"blocks", blocks}, {"vacuum_index", dec.vacuum_index},
                   {"seed_attempts", dec.seed_attempts}};
    return kOk;
}

json modular_json(const ModularData& md) {
    const int r = md.rank;
    json N = json::array(), C = md.C;
    for (int i = 0; i < r; ++i) {
        json row = json::array();
        for (int j = 0; j < r; ++j) {
            json col = json::array();
            for (int k = 0; k < r; ++k) col.push_back(md.fusion(i, j, k));
            row.push_back(col);
        }
        N.push_back(row);
    }
    return {{"rank", r},
            {"S", to_json(md.S)},
            {"T", to_json(md.t)},
            {"N", N},
            {"C", C},
            {"qdim", md.qdim},
            {"lambda", md.lambda},
            {"gauss", {{"dp", to_json(md.gauss_plus)}, {"dm", to_json(md.gauss_minus)}, {"D", md.D}}},
            {"residuals", md.residuals.values}};
}

int cmd_modular(const Args& a, RunReport& rep) {
    auto cat = resolve_category(a.category);
    auto p = pipeline_for(rep, cat);
    rep.results = modular_json(p->md);
    rep.results["blocks"] = p->dec.block_dims;
    std::cerr << "modular data: " << p->md.rank << " blocks, Verlinde rounding "
              << p->md.residuals.get("verlinde_rounding") << "\n";
    return kOk;
}

json value_json(cplx z, double tolerance) {
    json j = to_json(z);
    j["tolerance"] = tolerance;
    return j;
}

struct Values {
    std::optional<cplx> statesum, surgery;
};

Values evaluate(const Args& a, RunReport& rep) {
    if (a.statesum.empty() && a.surgery.empty()) throw CategoryError("need --statesum and/or --surgery");
    auto cat = resolve_category(a.category);
    Values v;
    if (!a.statesum.empty()) {
        {
            StageTimer t(rep, "validate");
            add_validation(rep, cat);
        }
        auto tri = resolve_triangulation(a.statesum);
        StageTimer t(rep, "statesum");
        StateSumOptions so{a.workers, budget_of(a)};
        v.statesum = state_sum(cat, tri, so);
        rep.results["statesum"] = value_json(*v.statesum, a.tolerance);
        rep.results["statesum"]["triangulation"] = tri.name;
        rep.results["statesum"]["colorings"] = coloring_count(cat.rank(), tri.n_edges, budget_of(a));
    }
    if (!a.surgery.empty()) {
        auto g = resolve_plumbing(a.surgery);
        auto p = pipeline_for(rep, cat);
        StageTimer t(rep, "surgery");
        SurgeryOptions so{a.workers, budget_of(a), a.strict_trees};
        auto r = evaluate_surgery(p->md, g, so);
        v.surgery = r.Z;
        rep.results["surgery"] = value_json(r.Z, a.tolerance);
        rep.results["surgery"]["graph"] = g.name;
        rep.results["surgery"]["rt"] = to_json(r.tau);
        rep.results["surgery"]["rt_delta"] = std::abs(r.tau - r.Z);
        rep.results["surgery"]["signature"] = r.sigma;
        rep.results["surgery"]["colorings"] = r.colorings;
        rep.results["surgery"]["has_cycle"] = g.has_cycle();
    }
    return v;
}

int cmd_invariant(const Args& a, RunReport& rep) {
    evaluate(a, rep);
    return kOk;
}

int cmd_compare(const Args& a, RunReport& rep) {
    if (a.statesum.empty() || a.surgery.empty()) throw CategoryError("compare needs --statesum and --surgery");
    auto v = evaluate(a, rep);
    double delta = std::abs(*v.statesum - *v.surgery);
    rep.results["delta"] = delta;
    rep.results["tolerance"] = a.tolerance;
    rep.results["agree"] = delta < a.tolerance;
    std::cerr << "statesum " << v.statesum->real() << (v.statesum->imag() < 0 ? "-" : "+")
              << std::abs(v.statesum->imag()) << "i, surgery " << v.surgery->real()
              << (v.surgery->imag() < 0 ? "-" : "+") << std::abs(v.surgery->imag()) << "i, delta " << delta
              << "\n";
    return delta < a.tolerance ? kOk : kTolerance;
}

int cmd_zoo(const Args& a, RunReport& rep) {
    if (!a.dump.empty()) {
        auto [scheme, name] = split_uri(a.dump);
        if (scheme == "builtin") {
            try {
                std::cout << triangulation_to_json_text(builtin_triangulation(name)) << "\n";
            } catch (const TriangulationError&) {
                std::cout << plumbing_to_json_text(builtin_plumbing(name)) << "\n";
            }
        } else {
            std::cout << category_to_json_text(zoo(name)) << "\n";
        }
        return -1;  // raw dump, no report
    }
    rep.results = {{"categories", zoo_names()},
                   {"triangulations", builtin_triangulation_names()},
                   {"plumbing", builtin_plumbing_names()}};
    return kOk;
}

int cmd_selftest(const Args& a, RunReport& rep) {
    AcceptanceOptions opt;
    opt.seed = seed_from_env();
    opt.workers = a.workers;
    StageTimer t(rep, "selftest");
    auto results = run_acceptance(std::cerr, opt);
    json list = json::array();
    bool all = true;
    for (const auto& r : results) {
        list.push_back({{"id", r.id}, {"name", r.name}, {"pass", r.pass}, {"detail", r.detail}});
        all = all && r.pass;
    }
    rep.results = {{"criteria", list}, {"passed", all}};
    return all ? kOk : kTolerance;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Drinfeld-center modular data, state sums and surgery invariants"};
    app.require_subcommand(1);
    app.fallthrough();
    Args a;
    app.add_option("--category", a.category, "zoo:<name>, builtin:<name> or a category JSON path");
    app.add_option("--statesum", a.statesum, "builtin:<name> or a triangulation JSON path");
    app.add_option("--surgery", a.surgery, "builtin:<name> or a plumbing JSON path");
    app.add_option("--workers", a.workers, "enumeration threads (0: OpenMP default)")->check(CLI::NonNegativeNumber);
    app.add_option("--budget", a.budget, "maximum number of colorings")->capture_default_str();
    app.add_flag("--strict-trees", a.strict_trees, "refuse plumbing graphs with cycles");
    app.add_option("--tolerance", a.tolerance, "compare tolerance")->capture_default_str();
    app.add_flag("--timings", a.timings, "include wall-clock stage timings in the report");

    using Handler = int (*)(const Args&, RunReport&);
    std::vector<std::pair<CLI::App*, Handler>> subs = {
        {app.add_subcommand("validate", "check fusion rules, pentagon, unitarity"), cmd_validate},
        {app.add_subcommand("center", "tube algebra block decomposition"), cmd_center},
        {app.add_subcommand("modular-data", "S, T, fusion rules of the center"), cmd_modular},
        {app.add_subcommand("invariant", "state sum and/or surgery invariant"), cmd_invariant},
        {app.add_subcommand("compare", "state sum vs surgery on the same manifold"), cmd_compare},
        {app.add_subcommand("zoo", "list bundled data"), cmd_zoo},
        {app.add_subcommand("selftest", "run the acceptance suite"), cmd_selftest},
    };
    subs[5].first->add_option("--dump", a.dump, "print zoo:<cat> or builtin:<name> as JSON");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kOk : kValidation;
    }

    RunReport rep;
    rep.emit_timings = a.timings;
    rep.command.assign(argv + 1, argv + argc);
    int rc = kOk;
    try {
        for (auto& [sub, handler] : subs)
            if (sub->parsed()) rc = handler(a, rep);
    } catch (const BudgetError& e) {
        std::cerr << "budget exceeded: " << e.what() << "\n";
        return kBudget;
    } catch (const ToleranceError& e) {
        std::cerr << "tolerance failure: " << e.what() << "\n";
        return kTolerance;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kValidation;
    }
    if (rc >= 0) std::cout << rep.to_json_text() << "\n";
    return rc < 0 ? kOk : rc;
}
