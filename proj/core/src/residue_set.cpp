#include "powsum/residue_set.hpp"

#include "powsum/error.hpp"
#include "powsum/random.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace powsum {

bool ResidueSet::prefers_bitmap(u64 p, std::size_t size) noexcept
{
    return p <= ResidueCollector::bitmap_modulus_limit && static_cast<u64>(size) * 64 >= p;
}

ResidueSet ResidueSet::from_sorted_unique(u64 p, std::vector<u64> sorted)
{
    ResidueSet s;
    s.p_ = p;
    s.size_ = sorted.size();
    if (prefers_bitmap(p, sorted.size())) {
        std::vector<u64> words((p + 63) / 64, 0);
        for (u64 x : sorted)
            words[x / 64] |= u64{1} << (x % 64);
        s.data_ = Bitmap{std::move(words)};
    } else {
        s.data_ = Sorted{std::move(sorted)};
    }
    return s;
}

ResidueSet ResidueSet::from_values(u64 p, std::span<u64 const> values)
{
    if (p == 0)
        throw PreconditionError("ResidueSet: modulus must be positive");
    std::vector<u64> v(values.begin(), values.end());
    for (auto& x : v)
        x %= p;
    std::ranges::sort(v);
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return from_sorted_unique(p, std::move(v));
}

ResidueSet ResidueSet::from_values(u64 p, std::initializer_list<u64> values)
{
    return from_values(p, std::span<u64 const>(values.begin(), values.size()));
}

ResidueSet ResidueSet::from_bitmap(u64 p, std::vector<u64> words)
{
    if (words.size() != (p + 63) / 64)
        throw PreconditionError("ResidueSet: bitmap size does not match modulus");
    if (p % 64 != 0)
        words.back() &= (u64{1} << (p % 64)) - 1;
    std::size_t count = 0;
    for (u64 w : words)
        count += static_cast<std::size_t>(__builtin_popcountll(w));
    ResidueSet s;
    s.p_ = p;
    s.size_ = count;
    if (prefers_bitmap(p, count)) {
        s.data_ = Bitmap{std::move(words)};
    } else {
        s.data_ = Bitmap{std::move(words)};
        s.data_ = Sorted{s.elements()};
    }
    return s;
}

ResidueSet ResidueSet::full(u64 p)
{
    if (p <= ResidueCollector::bitmap_modulus_limit)
        return from_bitmap(p, std::vector<u64>((p + 63) / 64, ~u64{0}));
    throw GuardError("ResidueSet::full: modulus too large");
}

bool ResidueSet::contains(u64 x) const noexcept
{
    if (x >= p_)
        return false;
    if (auto const* v = std::get_if<Sorted>(&data_))
        return std::ranges::binary_search(v->values, x);
    return (std::get<Bitmap>(data_).words[x / 64] >> (x % 64)) & 1;
}

std::vector<u64> ResidueSet::elements() const
{
    if (auto const* v = std::get_if<Sorted>(&data_))
        return v->values;
    std::vector<u64> out;
    out.reserve(size_);
    for_each([&](u64 x) { out.push_back(x); });
    return out;
}

ResidueCollector::ResidueCollector(u64 p) : p_(p), use_bitmap_(p <= bitmap_modulus_limit)
{
    if (use_bitmap_)
        words_.assign((p + 63) / 64, 0);
}

void ResidueCollector::insert(u64 x)
{
    if (use_bitmap_) {
        u64& w = words_[x / 64];
        u64 const bit = u64{1} << (x % 64);
        count_ += (w & bit) ? 0 : 1;
        w |= bit;
    } else {
        values_.push_back(x);
        ++count_;
    }
}

ResidueSet ResidueCollector::finish() &&
{
    if (use_bitmap_)
        return ResidueSet::from_bitmap(p_, std::move(words_));
    return ResidueSet::from_values(p_, values_);
}

PowerSet::PowerSet(SubgroupCtx ctx, u64 L, u64 M) : PowerSet(ctx, L, M, [&] {
    std::vector<u64> idx(M);
    for (u64 i = 0; i < M; ++i)
        idx[i] = L + 1 + i;
    return idx;
}())
{
}

PowerSet::PowerSet(SubgroupCtx ctx, u64 L, u64 M, std::vector<u64> indices)
    : ctx_(std::move(ctx)), L_(L), M_(M), indices_(std::move(indices))
{
    if (M_ == 0 || M_ > ctx_.t())
        throw PreconditionError("PowerSet: need 1 <= M <= t (M=" + std::to_string(M_) +
                                ", t=" + std::to_string(ctx_.t()) + ")");
    std::ranges::sort(indices_);
    indices_.erase(std::unique(indices_.begin(), indices_.end()), indices_.end());
    if (!indices_.empty() && (indices_.front() < L_ + 1 || indices_.back() > L_ + M_))
        throw PreconditionError("PowerSet: index outside [L+1, L+M]");

    FieldCtx const& field = ctx_.field();
    u64 const t = ctx_.t();
    std::vector<u64> values;
    values.reserve(indices_.size());
    for (u64 x : indices_)
        values.push_back(field.pow(ctx_.g(), x % t));
    elements_ = ResidueSet::from_values(ctx_.p(), values);
}

PowerSet PowerSet::subsample(SubgroupCtx ctx, u64 L, u64 M, double delta, u64 seed)
{
    if (!(delta > 0.0 && delta <= 1.0))
        throw PreconditionError("PowerSet::subsample: delta must lie in (0, 1]");
    u64 const keep = std::min<u64>(M, static_cast<u64>(std::ceil(delta * static_cast<double>(M) - 1e-9)));
    Rng rng(seed);
    auto picks = rng.sample_distinct(M, std::max<u64>(keep, 1));
    for (auto& x : picks)
        x += L + 1;
    return PowerSet(std::move(ctx), L, M, std::move(picks));
}

} // namespace powsum
