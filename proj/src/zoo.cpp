#include "doubletop/catdata.hpp"

#include <cmath>
#include <numbers>

namespace doubletop {

namespace {

// Every admissible multiplicity-free 6j entry set to 1; callers override.
void fill_ones(CategoryData& cat) {
    int n = cat.rank();
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                for (int d = 0; d < n; ++d)
                    for (int e = 0; e < n; ++e)
                        for (int f = 0; f < n; ++f)
                            if (cat.N(a, b, e) && cat.N(e, c, d) && cat.N(b, c, f) && cat.N(a, f, d))
                                cat.sixj.set({a, b, c, d, e, f, 0, 0, 0, 0}, 1.0);
}

void set_labels(CategoryData& cat, const std::vector<std::string>& names) {
    cat.labels.clear();
    for (size_t i = 0; i < names.size(); ++i) cat.labels.push_back({int(i), names[i]});
    cat.ring.n = static_cast<int>(names.size());
    cat.ring.N.assign(cat.ring.n * cat.ring.n * cat.ring.n, 0);
}

CategoryData vec_zn(int N) {
    CategoryData cat;
    cat.name = "vec_z" + std::to_string(N);
    std::vector<std::string> names;
    for (int k = 0; k < N; ++k) names.push_back(std::to_string(k));
    set_labels(cat, names);
    cat.ring.dual.resize(N);
    for (int a = 0; a < N; ++a) {
        cat.ring.dual[a] = (N - a) % N;
        for (int b = 0; b < N; ++b) cat.ring.mult_ref(a, b, (a + b) % N) = 1;
    }
    cat.qdims.assign(N, 1.0);
    fill_ones(cat);
    return cat;
}

CategoryData fibonacci() {
    const double phi = std::numbers::phi;
    CategoryData cat;
    cat.name = "fibonacci";
    set_labels(cat, {"1", "tau"});
    cat.ring.dual = {0, 1};
    auto& r = cat.ring;
    r.mult_ref(0, 0, 0) = 1;
    r.mult_ref(0, 1, 1) = r.mult_ref(1, 0, 1) = 1;
    r.mult_ref(1, 1, 0) = r.mult_ref(1, 1, 1) = 1;
    cat.qdims = {1.0, phi};
    fill_ones(cat);
    double s = 1.0 / std::sqrt(phi);
    cat.sixj.set({1, 1, 1, 1, 0, 0, 0, 0, 0, 0}, 1.0 / phi);
    cat.sixj.set({1, 1, 1, 1, 0, 1, 0, 0, 0, 0}, s);
    cat.sixj.set({1, 1, 1, 1, 1, 0, 0, 0, 0, 0}, s);
    cat.sixj.set({1, 1, 1, 1, 1, 1, 0, 0, 0, 0}, -1.0 / phi);
    const double pi = std::numbers::pi;
    cat.rsymbols = std::map<std::array<int, 3>, cplx>{
        {{0, 0, 0}, 1.0},
        {{0, 1, 1}, 1.0},
        {{1, 0, 1}, 1.0},
        {{1, 1, 0}, std::polar(1.0, -4 * pi / 5)},
        {{1, 1, 1}, std::polar(1.0, 3 * pi / 5)}};
    return cat;
}

CategoryData ising() {
    CategoryData cat;
    cat.name = "ising";
    set_labels(cat, {"1", "sigma", "psi"});
    cat.ring.dual = {0, 1, 2};
    auto& r = cat.ring;
    for (int a = 0; a < 3; ++a) r.mult_ref(0, a, a) = r.mult_ref(a, 0, a) = 1;
    r.mult_ref(1, 1, 0) = r.mult_ref(1, 1, 2) = 1;
    r.mult_ref(1, 2, 1) = r.mult_ref(2, 1, 1) = 1;
    r.mult_ref(2, 2, 0) = 1;
    cat.qdims = {1.0, std::sqrt(2.0), 1.0};
    fill_ones(cat);
    double h = 1.0 / std::sqrt(2.0);
    cat.sixj.set({1, 1, 1, 1, 0, 0, 0, 0, 0, 0}, h);
    cat.sixj.set({1, 1, 1, 1, 0, 2, 0, 0, 0, 0}, h);
    cat.sixj.set({1, 1, 1, 1, 2, 0, 0, 0, 0, 0}, h);
    cat.sixj.set({1, 1, 1, 1, 2, 2, 0, 0, 0, 0}, -h);
    cat.sixj.set({1, 2, 1, 2, 1, 1, 0, 0, 0, 0}, -1.0);
    cat.sixj.set({2, 1, 2, 1, 1, 1, 0, 0, 0, 0}, -1.0);
    const double pi = std::numbers::pi;
    cat.rsymbols = std::map<std::array<int, 3>, cplx>{
        {{0, 0, 0}, 1.0},
        {{0, 1, 1}, 1.0},
        {{1, 0, 1}, 1.0},
        {{0, 2, 2}, 1.0},
        {{2, 0, 2}, 1.0},
        {{1, 1, 0}, std::polar(1.0, -pi / 8)},
        {{1, 1, 2}, std::polar(1.0, 3 * pi / 8)},
        {{1, 2, 1}, cplx(0, -1)},
        {{2, 1, 1}, cplx(0, -1)},
        {{2, 2, 0}, -1.0}};
    return cat;
}

}  // namespace

std::vector<std::string> zoo_names() { return {"vec_z2", "vec_z3", "fibonacci", "ising"}; }

CategoryData zoo(const std::string& name) {
    CategoryData cat;
    if (name.rfind("vec_z", 0) == 0) {
        int N = 0;
        try {
            size_t pos = 0;
            N = std::stoi(name.substr(5), &pos);
            if (pos != name.size() - 5) N = 0;
        } catch (const std::exception&) {
            N = 0;
        }
        if (N < 1 || N > 8) throw CategoryError("unknown zoo category '" + name + "' (vec_zN needs 1<=N<=8)");
        cat = vec_zn(N);
    } else if (name == "fibonacci") {
        cat = fibonacci();
    } else if (name == "ising") {
        cat = ising();
    } else {
        throw CategoryError("unknown zoo category '" + name + "'");
    }
    finalize_category(cat);
    return cat;
}

}  // namespace doubletop
