#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace doubletop {

using cplx = std::complex<double>;

// Raised for any violated invariant in input data. The message names the
// invariant and the offending labels.
class CategoryError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class TriangulationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class BudgetError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A computed quantity missed its tolerance.
class ToleranceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Compensated accumulator for complex sums.
struct KahanSum {
    cplx sum{0, 0};
    cplx c{0, 0};
    void add(cplx x) {
        cplx y = x - c;
        cplx t = sum + y;
        c = (t - sum) - y;
        sum = t;
    }
};

inline constexpr uint64_t default_budget = 100000000ULL;

}  // namespace doubletop
