#include "powsum/random.hpp"

#include "powsum/error.hpp"

#include <algorithm>
#include <unordered_set>

namespace powsum {

std::uint64_t Rng::below(std::uint64_t n)
{
    if (n == 0)
        throw PreconditionError("Rng::below: empty range");
    // reject the top partial bucket
    std::uint64_t const limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n + 1) % n;
    for (;;) {
        std::uint64_t const x = next();
        if (x <= limit)
            return x % n;
    }
}

std::vector<std::uint64_t> Rng::sample_distinct(std::uint64_t n, std::uint64_t count)
{
    if (count > n)
        throw PreconditionError("Rng::sample_distinct: count exceeds range");
    std::unordered_set<std::uint64_t> chosen;
    chosen.reserve(count);
    std::vector<std::uint64_t> out;
    out.reserve(count);
    for (std::uint64_t j = n - count; j < n; ++j) {
        std::uint64_t const r = below(j + 1);
        std::uint64_t const pick = chosen.contains(r) ? j : r;
        chosen.insert(pick);
        out.push_back(pick);
    }
    std::ranges::sort(out);
    return out;
}

} // namespace powsum
