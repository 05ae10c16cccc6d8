#include "powsum/addcomb.hpp"

#include "powsum/error.hpp"
#include "powsum/ntt.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <string>
#include <unordered_map>

namespace powsum {

namespace {

void require_same_modulus(ResidueSet const& A, ResidueSet const& B, char const* op)
{
    if (A.modulus() != B.modulus())
        throw PreconditionError(std::string(op) + ": modulus mismatch (" + std::to_string(A.modulus()) +
                                " vs " + std::to_string(B.modulus()) + ")");
}

template <typename Combine>
ResidueSet combine_sets(ResidueSet const& A, std::vector<u64> const& b, Combine combine)
{
    ResidueCollector out(A.modulus());
    auto const a = A.elements();
    for (u64 x : a) {
        for (u64 y : b)
            out.insert(combine(x, y));
        if (out.saturated())
            break;
    }
    return std::move(out).finish();
}

template <typename Map>
std::vector<std::pair<u64, u64>> count_pairs(ResidueSet const& A, ResidueSet const& B, Map counts)
{
    u64 const p = A.modulus();
    auto const b = B.elements();
    A.for_each([&](u64 x) {
        for (u64 y : b)
            ++counts[add_mod(x, y, p)];
    });
    std::vector<std::pair<u64, u64>> entries(counts.begin(), counts.end());
    std::ranges::sort(entries);
    return entries;
}

std::vector<std::pair<u64, u64>> count_by_transform(ResidueSet const& A, ResidueSet const& B)
{
    u64 const p = A.modulus();
    if (p > transform_modulus_limit)
        throw GuardError("transform backend requires p <= 2^22 (p=" + std::to_string(p) + ")");
    std::size_t const length = std::bit_ceil(static_cast<std::size_t>(2 * p));
    std::vector<u64> fa(length, 0), fb(length, 0);
    A.for_each([&](u64 x) { fa[x] = 1; });
    B.for_each([&](u64 x) { fb[x] = 1; });
    auto const c = ntt::cyclic_convolution(std::move(fa), std::move(fb));

    // linear convolution has support [0, 2p-2], which fits in length >= 2p
    std::vector<std::pair<u64, u64>> entries;
    for (u64 s = 0; s < p; ++s) {
        u64 const r = c[s] + c[s + p];
        if (r != 0)
            entries.emplace_back(s, r);
    }
    return entries;
}

} // namespace

ResidueSet sumset(ResidueSet const& A, ResidueSet const& B)
{
    require_same_modulus(A, B, "sumset");
    u64 const p = A.modulus();
    return combine_sets(A, B.elements(), [p](u64 x, u64 y) { return add_mod(x, y, p); });
}

ResidueSet product_set(ResidueSet const& A, ResidueSet const& B)
{
    require_same_modulus(A, B, "product_set");
    u64 const p = A.modulus();
    return combine_sets(A, B.elements(), [p](u64 x, u64 y) { return mul_mod(x, y, p); });
}

ResidueSet difference_set(ResidueSet const& A, ResidueSet const& B)
{
    require_same_modulus(A, B, "difference_set");
    u64 const p = A.modulus();
    return combine_sets(A, B.elements(), [p](u64 x, u64 y) { return sub_mod(x, y, p); });
}

ResidueSet ratio_set(ResidueSet const& A, ResidueSet const& B)
{
    require_same_modulus(A, B, "ratio_set");
    u64 const p = A.modulus();
    std::vector<u64> inverses;
    inverses.reserve(B.size());
    B.for_each([&](u64 y) {
        if (y != 0)
            inverses.push_back(inverse_mod(y, p));
    });
    return combine_sets(A, inverses, [p](u64 x, u64 y) { return mul_mod(x, y, p); });
}

ResidueSet difference_quotient_set(ResidueSet const& A)
{
    if (A.size() < 2)
        throw PreconditionError("difference_quotient_set: need |A| >= 2");
    if (A.size() > difference_quotient_limit)
        throw GuardError("difference_quotient_set: |A| limited to " + std::to_string(difference_quotient_limit));
    ResidueSet const diffs = difference_set(A, A);
    return ratio_set(diffs, diffs);
}

RepCounts::RepCounts(u64 p, std::vector<std::pair<u64, u64>> entries) : p_(p), entries_(std::move(entries)) {}

u64 RepCounts::at(u64 s) const noexcept
{
    auto const it = std::ranges::lower_bound(entries_, s, {}, &std::pair<u64, u64>::first);
    return (it != entries_.end() && it->first == s) ? it->second : 0;
}

u64 RepCounts::total() const noexcept
{
    u64 sum = 0;
    for (auto const& [s, r] : entries_)
        sum += r;
    return sum;
}

u64 RepCounts::energy() const noexcept
{
    u64 sum = 0;
    for (auto const& [s, r] : entries_)
        sum += r * r;
    return sum;
}

RepCounts rep_counts(ResidueSet const& A, ResidueSet const& B, EnergyBackend backend)
{
    require_same_modulus(A, B, "rep_counts");
    switch (backend) {
    case EnergyBackend::naive:
        return {A.modulus(), count_pairs(A, B, std::map<u64, u64>{})};
    case EnergyBackend::hashed: {
        std::unordered_map<u64, u64> table;
        table.reserve(std::min<u64>(A.modulus(), static_cast<u64>(A.size()) * B.size()));
        return {A.modulus(), count_pairs(A, B, std::move(table))};
    }
    case EnergyBackend::transform:
        return {A.modulus(), count_by_transform(A, B)};
    }
    throw PreconditionError("rep_counts: unknown backend");
}

u64 additive_energy(ResidueSet const& A, ResidueSet const& B, EnergyBackend backend)
{
    return rep_counts(A, B, backend).energy();
}

} // namespace powsum
