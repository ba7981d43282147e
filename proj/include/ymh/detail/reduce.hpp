#pragma once

#include <cstddef>
#include <vector>

namespace ymh::detail {

// Sum of term(i) for i in [0, count). Terms are grouped in fixed-size blocks
// and the block partials are combined serially, so the result does not depend
// on the number of threads.
template <class Term>
long double blocked_sum(std::size_t count, Term&& term) {
    constexpr std::size_t kBlock = 2048;
    const std::size_t blocks = (count + kBlock - 1) / kBlock;
    std::vector<long double> partial(blocks, 0.0L);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t b = 0; b < static_cast<std::ptrdiff_t>(blocks); ++b) {
        const std::size_t begin = static_cast<std::size_t>(b) * kBlock;
        const std::size_t end = begin + kBlock < count ? begin + kBlock : count;
        long double s = 0.0L;
        for (std::size_t i = begin; i < end; ++i) s += term(i);
        partial[static_cast<std::size_t>(b)] = s;
    }
    long double total = 0.0L;
    for (long double p : partial) total += p;
    return total;
}

}  // namespace ymh::detail
