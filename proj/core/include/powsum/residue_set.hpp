#pragma once

#include "powsum/modmath.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <variant>
#include <vector>

namespace powsum {

/// A set of residues modulo p.
///
/// Stored as a sorted array while |S| * 64 < p and as a bitmap otherwise; the
/// choice is invisible to callers, who iterate in ascending order either way.
class ResidueSet {
public:
    enum class Storage { sorted, bitmap };

    ResidueSet() = default;

    /// Values are reduced modulo p and deduplicated.
    static ResidueSet from_values(u64 p, std::span<u64 const> values);
    static ResidueSet from_values(u64 p, std::initializer_list<u64> values);

    /// Takes ownership of a bitmap with p bits (word i holds residues 64i..64i+63).
    static ResidueSet from_bitmap(u64 p, std::vector<u64> words);

    /// {0, 1, ..., p-1}
    static ResidueSet full(u64 p);

    u64 modulus() const noexcept { return p_; }
    std::size_t size() const noexcept { return size_; }
    bool empty() const noexcept { return size_ == 0; }
    Storage storage() const noexcept { return std::holds_alternative<Bitmap>(data_) ? Storage::bitmap : Storage::sorted; }

    bool contains(u64 x) const noexcept;

    /// Ascending elements.
    std::vector<u64> elements() const;

    template <typename F>
    void for_each(F&& f) const
    {
        if (auto const* v = std::get_if<Sorted>(&data_)) {
            for (u64 x : v->values)
                f(x);
            return;
        }
        auto const& words = std::get<Bitmap>(data_).words;
        for (std::size_t w = 0; w < words.size(); ++w) {
            u64 bits = words[w];
            while (bits) {
                int const b = __builtin_ctzll(bits);
                f(static_cast<u64>(w) * 64 + static_cast<u64>(b));
                bits &= bits - 1;
            }
        }
    }

    friend bool operator==(ResidueSet const& a, ResidueSet const& b)
    {
        return a.p_ == b.p_ && a.size_ == b.size_ && a.elements() == b.elements();
    }

private:
    struct Sorted {
        std::vector<u64> values;
    };
    struct Bitmap {
        std::vector<u64> words;
    };

    static ResidueSet from_sorted_unique(u64 p, std::vector<u64> sorted);
    static bool prefers_bitmap(u64 p, std::size_t size) noexcept;

    u64 p_ = 1;
    std::size_t size_ = 0;
    std::variant<Sorted, Bitmap> data_;
};

/// Accumulates residues into a bitmap (p bits) or a vector, whichever suits p,
/// and produces a ResidueSet. Used by the set operations.
class ResidueCollector {
public:
    static constexpr u64 bitmap_modulus_limit = u64{1} << 28;

    explicit ResidueCollector(u64 p);

    void insert(u64 x);
    /// Residues collected so far (exact only in bitmap mode; upper bound otherwise).
    std::size_t count() const noexcept { return count_; }
    bool saturated() const noexcept { return use_bitmap_ && count_ == p_; }
    ResidueSet finish() &&;

private:
    u64 p_;
    bool use_bitmap_;
    std::size_t count_ = 0;
    std::vector<u64> words_;
    std::vector<u64> values_;
};

/// {g^x mod p : x in X} for an index set X inside [L+1, L+M], M <= t.
class PowerSet {
public:
    /// X = [L+1, L+M] in full.
    PowerSet(SubgroupCtx ctx, u64 L, u64 M);

    /// Seeded random subset of [L+1, L+M] with ceil(delta*M) indices.
    static PowerSet subsample(SubgroupCtx ctx, u64 L, u64 M, double delta, u64 seed);

    /// Explicit index subset; every index must lie in [L+1, L+M].
    PowerSet(SubgroupCtx ctx, u64 L, u64 M, std::vector<u64> indices);

    SubgroupCtx const& ctx() const noexcept { return ctx_; }
    u64 offset() const noexcept { return L_; }
    u64 length() const noexcept { return M_; }
    /// |X| / M
    double density() const noexcept { return static_cast<double>(indices_.size()) / static_cast<double>(M_); }
    std::vector<u64> const& indices() const noexcept { return indices_; }
    ResidueSet const& elements() const noexcept { return elements_; }

private:
    SubgroupCtx ctx_;
    u64 L_;
    u64 M_;
    std::vector<u64> indices_;
    ResidueSet elements_;
};

} // namespace powsum
