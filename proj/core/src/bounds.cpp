#include "powsum/bounds.hpp"

#include "powsum/compensated.hpp"
#include "powsum/error.hpp"

#include <algorithm>
#include <cmath>

namespace powsum::bounds {

namespace {

constexpr Exponent e_71_24{71, 24};
constexpr Exponent e_1_24{1, 24};
constexpr Exponent e_1_8{1, 8};
constexpr Exponent e_1_4{1, 4};
constexpr Exponent e_1_6{1, 6};
constexpr Exponent e_1_2{1, 2};
constexpr Exponent e_71_96{71, 96};
constexpr Exponent e_73_96{73, 96};
constexpr Exponent e_49_96{49, 96};
constexpr Exponent e_m1_96{-1, 96};
constexpr Exponent e_22_36{22, 36};
constexpr Exponent e_13_36{13, 36};
constexpr Exponent e_7_6{7, 6};
constexpr Exponent e_4_3{4, 3};
constexpr Exponent e_2_3{2, 3};
constexpr Exponent e_3_5{3, 5};
constexpr Exponent e_m6_5{-6, 5};
constexpr Exponent e_m2_3{-2, 3};
constexpr Exponent e_179_438{179, 438};
constexpr Exponent e_23_192{23, 192};
constexpr Exponent e_31_72{31, 72};
constexpr Exponent e_9_8{9, 8};
constexpr Exponent e_7_8{7, 8};
constexpr Exponent e_3_4{3, 4};
constexpr Exponent e_5_8{5, 8};
constexpr Exponent e_22_9{22, 9};
constexpr Exponent e_m1_3{-1, 3};
constexpr Exponent e_m1_4{-1, 4};

double as_real(u64 x) noexcept { return static_cast<double>(x); }

u128 sq(u64 x) noexcept { return static_cast<u128>(x) * x; }

void require(bool ok, char const* message)
{
    if (!ok)
        throw PreconditionError(message);
}

void require_order(u64 p, u64 t)
{
    require(t >= 1 && p >= 2 && (p - 1) % t == 0, "t must divide p-1");
}

double threshold_mid(double p) noexcept
{
    return rpow(p, e_3_5) * rpow(std::log(p), e_m6_5);
}

double threshold_high(double p) noexcept
{
    return rpow(p, e_2_3) * rpow(std::log(p), e_m2_3);
}

} // namespace

double rpow(double x, Exponent q) noexcept
{
    return std::exp(q.value() * std::log(x));
}

double korobov_bound(u64 p)
{
    require(p >= 3, "korobov_bound: p must be >= 3");
    double const x = as_real(p);
    return std::sqrt(x) * std::log(x);
}

double theorem1_bound(u64 p, u64 t, u64 N)
{
    require(N >= 1 && N <= t, "theorem1_bound: need 1 <= N <= t");
    require_order(p, t);
    double const n = as_real(N);
    return as_real(p) * rpow(n, e_71_24) * (1.0 + rpow(n * n / as_real(t), e_1_24));
}

double theorem2_branch(int regime, double p, double t, double N)
{
    switch (regime) {
    case 1:
        return rpow(p, e_1_8) * rpow(N, e_71_96);
    case 2:
        return rpow(p, e_1_8) * rpow(t, e_m1_96) * rpow(N, e_73_96);
    case 3:
        return rpow(p, e_1_4) * rpow(t, e_m1_96) * rpow(N, e_49_96);
    default:
        throw PreconditionError("theorem2_branch: regime must be 1, 2 or 3");
    }
}

RegimeValue theorem2_bound(u64 p, u64 t, u64 N)
{
    require(N >= 1 && N <= t, "theorem2_bound: need 1 <= N <= t");
    RegimeValue out;
    if (sq(N) <= t)
        out.regime = 1;
    else if (sq(N) <= p)
        out.regime = 2;
    else {
        out.regime = 3;
        out.boundary = N == t;
    }
    out.value = theorem2_branch(out.regime, as_real(p), as_real(t), as_real(N));
    return out;
}

double theorem3_branch(int regime, double p, double t)
{
    double const lg = std::log(p);
    switch (regime) {
    case 1:
        return rpow(p, e_1_8) * rpow(t, e_22_36) * rpow(lg, e_7_6);
    case 2:
        return rpow(p, e_1_4) * rpow(t, e_13_36) * rpow(lg, e_7_6);
    case 3:
        return rpow(p, e_1_6) * rpow(t, e_1_2) * rpow(lg, e_4_3);
    case 4:
        return std::sqrt(p) * lg;
    default:
        throw PreconditionError("theorem3_branch: regime must be 1..4");
    }
}

RegimeValue theorem3_bound(u64 p, u64 t)
{
    require(p >= 3, "theorem3_bound: p must be >= 3");
    require_order(p, t);
    double const x = as_real(p);
    double const tt = as_real(t);
    RegimeValue out;
    if (sq(t) <= p)
        out.regime = 1;
    else if (tt <= threshold_mid(x))
        out.regime = 2;
    else if (tt <= threshold_high(x)) {
        out.regime = 3;
        out.regime_gap = tt <= rpow(x, e_3_5);
    } else
        out.regime = 4;
    out.value = out.regime == 4 ? korobov_bound(p) : theorem3_branch(out.regime, x, tt);
    return out;
}

double corollary_branch(int regime, double p, double N)
{
    switch (regime) {
    case 1:
        return rpow(p, e_1_8) * rpow(N, e_71_96);
    case 2:
        return rpow(p, e_23_192) * rpow(N, e_73_96);
    case 3:
        return rpow(p, e_31_72);
    default:
        throw PreconditionError("corollary_branch: regime must be 1, 2 or 3");
    }
}

RegimeValue corollary_bound(u64 p, u64 N)
{
    require(N >= 1 && p >= 2, "corollary_bound: need N >= 1");
    double const x = as_real(p);
    RegimeValue out;
    if (N < (u64{1} << 32) && sq(N) * sq(N) <= p)
        out.regime = 1;
    else if (as_real(N) <= rpow(x, e_179_438))
        out.regime = 2;
    else
        out.regime = 3;
    out.value = corollary_branch(out.regime, x, as_real(N));
    return out;
}

double lemma1_bound(u64 M, u64 t, double delta1, double delta2)
{
    require(M >= 1 && M <= t, "lemma1_bound: need 1 <= M <= t");
    require(delta1 > 0.0 && delta1 <= 1.0 && delta2 > 0.0 && delta2 <= 1.0,
            "lemma1_bound: densities must lie in (0, 1]");
    auto integral = [M](double d) {
        double const size = d * as_real(M);
        return std::abs(size - std::round(size)) <= 1e-9 * std::max(1.0, size);
    };
    require(integral(delta1) && integral(delta2), "lemma1_bound: delta * M must be an integer");
    double const m = as_real(M);
    double const first = rpow(m, e_9_8) * rpow(delta1, e_3_4) * delta2;
    double const second = rpow(as_real(t), e_1_8) * rpow(m, e_7_8) * rpow(delta1, e_5_8) * delta2;
    return std::min(first, second);
}

double lemma2_rhs(u64 p, u64 size_a, u64 size_b, u64 energy_a, u64 energy_b)
{
    double const a = as_real(size_a);
    double const b = as_real(size_b);
    return as_real(p) * (a * a) * (a * a) * (b * b) * (b * b) * as_real(energy_a) * as_real(energy_b);
}

Lemma2Check lemma2_check(ResidueSet const& A, ResidueSet const& B, EnergyBackend backend)
{
    require(!A.empty() && !B.empty(), "lemma2_check: sets must be nonempty");
    if (A.modulus() != B.modulus())
        throw PreconditionError("lemma2_check: modulus mismatch");
    u64 const p = A.modulus();

    ComplexAcc acc;
    auto const b = B.elements();
    A.for_each([&](u64 x) {
        for (u64 y : b)
            acc.add(unit_root(mul_mod(x, y, p), p));
    });
    double const n2 = std::norm(acc.value());

    Lemma2Check out;
    out.lhs = (n2 * n2) * (n2 * n2);
    out.energy_a = additive_energy(A, A, backend);
    out.energy_b = additive_energy(B, B, backend);
    out.rhs = lemma2_rhs(p, A.size(), B.size(), out.energy_a, out.energy_b);
    out.holds = out.lhs <= out.rhs * (1.0 + lemma2_tolerance);
    return out;
}

std::pair<double, double> lemma3_bounds(u64 p, u64 t, u64 energy)
{
    require(t >= 2, "lemma3_bounds: need t >= 2 so that log t > 0");
    require(energy >= t, "lemma3_bounds: energy must be at least t");
    double const x = as_real(p);
    double const e4 = rpow(as_real(energy), e_1_4);
    double const lt = std::log(as_real(t));
    return {rpow(x, e_1_8) * e4 * lt, rpow(x, e_1_4) * rpow(as_real(t), e_m1_4) * e4 * lt};
}

double shkredov_branch(int regime, double p, double t)
{
    double const lg = std::log(p);
    switch (regime) {
    case 1:
        return rpow(t, e_22_9) * rpow(lg, e_2_3);
    case 2:
        return t * t * t * rpow(p, e_m1_3) * rpow(lg, e_4_3);
    default:
        throw PreconditionError("shkredov_branch: regime must be 1 or 2");
    }
}

RegimeValue shkredov_energy_bound(u64 p, u64 t)
{
    require(p >= 3, "shkredov_energy_bound: p must be >= 3");
    require_order(p, t);
    double const x = as_real(p);
    double const tt = as_real(t);
    RegimeValue out;
    out.regime = tt <= threshold_mid(x) ? 1 : 2;
    out.value = shkredov_branch(out.regime, x, tt);
    return out;
}

std::string regime_label(int regime)
{
    return regime <= 0 ? std::string("-") : "r" + std::to_string(regime);
}

BoundReport make_report(std::string name, RegimeValue const& bound, double empirical, BoundInputs inputs)
{
    BoundReport r = make_report(std::move(name), bound.value, empirical, std::move(inputs));
    r.regime = regime_label(bound.regime);
    if (bound.boundary)
        r.flags.emplace_back("boundary");
    if (bound.regime_gap)
        r.flags.emplace_back("regime-gap");
    return r;
}

BoundReport make_report(std::string name, double bound, double empirical, BoundInputs inputs)
{
    if (!(bound > 0.0))
        throw PreconditionError("make_report: bound value must be positive");
    BoundReport r;
    r.name = std::move(name);
    r.regime = "-";
    r.bound_value = bound;
    r.empirical_value = empirical;
    r.ratio = empirical / bound;
    r.inputs = std::move(inputs);
    return r;
}

} // namespace powsum::bounds
