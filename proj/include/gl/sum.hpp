#pragma once

#include <cstddef>
#include <vector>

namespace gl {

// Fixed-order pairwise summation. All energy/flux reductions go through this
// so that results are reproducible bit-for-bit regardless of build flags.
double pairwise_sum(const double* x, std::size_t n);

inline double pairwise_sum(const std::vector<double>& x) {
    return pairwise_sum(x.data(), x.size());
}

// Accumulator that collects terms in deposit order and reduces pairwise.
struct SumAccumulator {
    std::vector<double> terms;
    void add(double t) { terms.push_back(t); }
    double sum() const { return pairwise_sum(terms); }
};

}  // namespace gl
