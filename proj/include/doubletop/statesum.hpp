#pragma once

#include <cstdint>
#include <vector>

#include "doubletop/catdata.hpp"
#include "doubletop/triangulation.hpp"

namespace doubletop {

// Normalized 6j weight of one tetrahedron. colors are indexed by the tet's
// edge slots (01 02 03 12 13 23); basis holds face labels (alpha beta gamma delta)
// on faces 012, 023, 123, 013. Inadmissible input gives 0.
cplx tet_weight(const CategoryData& cat, const Tetrahedron& tet, const std::array<int, 6>& colors,
                const std::array<int, 4>& basis = {0, 0, 0, 0});

struct StateSumOptions {
    int workers = 0;  // 0: OpenMP default
    uint64_t budget = default_budget;
};

// Serial reference: lexicographic enumeration, single compensated sum.
cplx state_sum_serial(const CategoryData& cat, const Triangulation& tri,
                      uint64_t budget = default_budget);

// Parallel kernel: contiguous chunks per worker, partials combined in rank order.
cplx state_sum(const CategoryData& cat, const Triangulation& tri, const StateSumOptions& opt = {});

uint64_t coloring_count(int n_labels, int n_edges, uint64_t budget);

using GroupTable = std::vector<std::vector<int>>;
GroupTable cyclic_group(int n);

struct DWResult {
    uint64_t count = 0;       // flat colorings
    uint64_t denominator = 1; // |G|^a
    double value() const { return static_cast<double>(count) / static_cast<double>(denominator); }
};

DWResult dw_oracle(const GroupTable& G, const Triangulation& tri, uint64_t budget = default_budget);

}  // namespace doubletop
