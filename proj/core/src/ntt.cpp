#include "powsum/ntt.hpp"

#include "powsum/error.hpp"

#include <bit>
#include <utility>

namespace powsum::ntt {

namespace {

constexpr u64 epsilon = 0xFFFF'FFFFull; // 2^64 mod modulus

u64 add(u64 a, u64 b) noexcept { return add_mod(a, b, modulus); }
u64 sub(u64 a, u64 b) noexcept { return sub_mod(a, b, modulus); }

u64 pow(u64 base, u64 exp) noexcept
{
    u64 r = 1;
    while (exp) {
        if (exp & 1)
            r = mul(r, base);
        base = mul(base, base);
        exp >>= 1;
    }
    return r;
}

// element of order exactly 2^log_n
u64 root_of_unity(unsigned log_n)
{
    static u64 const generator = primitive_root(FieldCtx(modulus));
    return pow(generator, (modulus - 1) >> log_n);
}

} // namespace

u64 mul(u64 x, u64 y) noexcept
{
    u128 const prod = static_cast<u128>(x) * y;
    u64 const lo = static_cast<u64>(prod);
    u64 const hi = static_cast<u64>(prod >> 64);
    u64 const hi_hi = hi >> 32;
    u64 const hi_lo = hi & epsilon;

    // prod = lo + hi_lo * 2^64 + hi_hi * 2^96, with 2^96 = -1
    u64 t0 = lo - hi_hi;
    if (lo < hi_hi)
        t0 -= epsilon;
    u64 const t1 = hi_lo * epsilon;
    u64 res = t0 + t1;
    if (res < t1)
        res += epsilon;
    return res >= modulus ? res - modulus : res;
}

void transform(std::span<u64> a, bool inverse)
{
    std::size_t const n = a.size();
    if (n == 0 || !std::has_single_bit(n) || std::countr_zero(n) > static_cast<int>(max_log_length))
        throw PreconditionError("ntt::transform: length must be a power of two <= 2^32");
    if (n == 1)
        return;

    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1)
            j ^= bit;
        j ^= bit;
        if (i < j)
            std::swap(a[i], a[j]);
    }

    for (std::size_t len = 2; len <= n; len <<= 1) {
        u64 w_len = root_of_unity(static_cast<unsigned>(std::countr_zero(len)));
        if (inverse)
            w_len = pow(w_len, len - 1);
        std::size_t const half = len / 2;
        std::vector<u64> twiddle(half);
        twiddle[0] = 1;
        for (std::size_t k = 1; k < half; ++k)
            twiddle[k] = mul(twiddle[k - 1], w_len);
        for (std::size_t i = 0; i < n; i += len) {
            for (std::size_t k = 0; k < half; ++k) {
                u64 const u = a[i + k];
                u64 const v = mul(a[i + k + half], twiddle[k]);
                a[i + k] = add(u, v);
                a[i + k + half] = sub(u, v);
            }
        }
    }

    if (inverse) {
        u64 const n_inv = pow(static_cast<u64>(n), modulus - 2);
        for (auto& x : a)
            x = mul(x, n_inv);
    }
}

std::vector<u64> cyclic_convolution(std::vector<u64> a, std::vector<u64> b)
{
    if (a.size() != b.size())
        throw PreconditionError("ntt::cyclic_convolution: length mismatch");
    transform(a, false);
    transform(b, false);
    for (std::size_t i = 0; i < a.size(); ++i)
        a[i] = mul(a[i], b[i]);
    transform(a, true);
    return a;
}

} // namespace powsum::ntt
