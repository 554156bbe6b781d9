#include <chrono>
#include <cstdio>
#include <cstdlib>

#include <omp.h>

#include "doubletop/statesum.hpp"
#include "doubletop/surgery.hpp"

using namespace doubletop;

namespace {

template <class F>
double seconds(F&& f, int reps) {
    auto t0 = std::chrono::steady_clock::now();
    for (int i = 0; i < reps; ++i) f();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() / reps;
}

}  // namespace

int main(int argc, char** argv) {
    int reps = argc > 1 ? std::atoi(argv[1]) : 3;
    int workers = argc > 2 ? std::atoi(argv[2]) : omp_get_max_threads();
    std::printf("threads available: %d, workers: %d, reps: %d\n", omp_get_max_threads(), workers, reps);
    std::printf("%-10s %-10s %12s %12s %12s\n", "category", "manifold", "serial [s]", "openmp [s]", "|diff|");
    for (const char* cat_name : {"vec_z3", "fibonacci", "ising"}) {
        auto cat = zoo(cat_name);
        for (const char* tri_name : {"s3", "s3_sub", "rp3_sub", "t3", "l52"}) {
            auto tri = builtin_triangulation(tri_name);
            cplx a, b;
            double ts = seconds([&] { a = state_sum_serial(cat, tri); }, reps);
            double tp = seconds([&] { b = state_sum(cat, tri, {workers, default_budget}); }, reps);
            std::printf("%-10s %-10s %12.6f %12.6f %12.2e\n", cat_name, tri_name, ts, tp, std::abs(a - b));
        }
    }
    auto md = run_pipeline(zoo("ising"))->md;
    PlumbingGraph g;  // E7-shaped tree, 9^7 colorings
    g.name = "e7";
    for (int i = 0; i < 7; ++i) g.vertices.push_back({i, -2});
    for (int i = 1; i < 6; ++i) g.edges.push_back({i - 1, i, 1});
    g.edges.push_back({2, 6, 1});
    cplx a, b;
    double ts = seconds([&] { a = surgery_invariant_serial(md, g); }, reps);
    double tp = seconds([&] { b = surgery_invariant(md, g, {workers, default_budget, false}); }, reps);
    std::printf("%-10s %-10s %12.6f %12.6f %12.2e\n", "ising", "surgery e7", ts, tp, std::abs(a - b));
}
