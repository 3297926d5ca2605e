#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace nsbl {

// Worker cap honoring the NSBL_THREADS environment variable. Results of all
// library operations are independent of this value: work is split into a
// fixed chunk structure and reduced pairwise, never by arrival order.
int max_workers();

// Run fn(chunk) for chunk = 0..nchunks-1 on up to max_workers() threads.
void parallel_for_chunks(std::size_t nchunks, const std::function<void(std::size_t)>& fn);

namespace detail {
constexpr std::size_t kPairwiseBase = 32;

template <class F>
double pairwise_sum_impl(std::size_t lo, std::size_t hi, F& f) {
    if (hi - lo <= kPairwiseBase) {
        double s = 0.0;
        for (std::size_t i = lo; i < hi; ++i) s += f(i);
        return s;
    }
    std::size_t mid = lo + (hi - lo) / 2;
    return pairwise_sum_impl(lo, mid, f) + pairwise_sum_impl(mid, hi, f);
}
}  // namespace detail

// Pairwise (tree) summation of f(i) for i in [0, count). The reduction tree
// depends only on count, so the result is bit-reproducible.
template <class F>
double pairwise_sum(std::size_t count, F f) {
    if (count == 0) return 0.0;
    return detail::pairwise_sum_impl(0, count, f);
}

inline double pairwise_sum(std::span<const double> v) {
    return pairwise_sum(v.size(), [&](std::size_t i) { return v[i]; });
}

}  // namespace nsbl
