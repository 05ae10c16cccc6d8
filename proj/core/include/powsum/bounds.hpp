#pragma once

#include "powsum/addcomb.hpp"
#include "powsum/modmath.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

// Right-hand sides of the bounds for incomplete exponential sums over a
// multiplicative subgroup, the sumset and energy estimates behind them, and
// helpers to compare them with measured values.
//
// Conventions used throughout:
//   * log is the natural logarithm;
//   * o(1) exponent corrections are dropped and implied constants are taken
//     to be 1, so every value here is a reference scale, not a proven bound
//     (the one exception is lemma2_check, whose inequality has constant 1);
//   * exponents are exact rationals applied as exp((num/den) * ln x);
//   * piecewise formulas take the first branch whose printed condition holds.
namespace powsum::bounds {

struct Exponent {
    std::int64_t num;
    std::int64_t den;

    double value() const noexcept { return static_cast<double>(num) / static_cast<double>(den); }
};

/// x^(num/den) for x > 0.
double rpow(double x, Exponent q) noexcept;

struct RegimeValue {
    double value = 0.0;
    int regime = 0;
    bool boundary = false;   // input on an edge no printed condition covers exactly
    bool regime_gap = false; // input in a band between printed conditions
};

/// sqrt(p) log p
double korobov_bound(u64 p);

/// p N^(71/24) (1 + (N^2/t)^(1/24)), for 1 <= N <= t and t | p-1.
double theorem1_bound(u64 p, u64 t, u64 N);

/// Piecewise in N:
///   1: N <= t^(1/2)            p^(1/8) N^(71/96)
///   2: t^(1/2) < N <= p^(1/2)  p^(1/8) t^(-1/96) N^(73/96)
///   3: p^(1/2) < N < t         p^(1/4) t^(-1/96) N^(49/96)
/// N = t > p^(1/2) matches no branch; it gets branch 3 with `boundary` set.
RegimeValue theorem2_bound(u64 p, u64 t, u64 N);

/// A single branch of theorem2_bound evaluated at real arguments.
double theorem2_branch(int regime, double p, double t, double N);

/// Piecewise in t, thresholds p^(1/2), p^(3/5) (log p)^(-6/5), p^(2/3) (log p)^(-2/3):
///   1: p^(1/8) t^(22/36) (log p)^(7/6)
///   2: p^(1/4) t^(13/36) (log p)^(7/6)
///   3: p^(1/6) t^(1/2)   (log p)^(4/3)
///   4: sqrt(p) log p
/// Branch 3's printed lower limit is p^(3/5), so t in (p^(3/5) (log p)^(-6/5), p^(3/5)]
/// reaches branch 3 by first-match and is flagged `regime_gap`.
RegimeValue theorem3_bound(u64 p, u64 t);
double theorem3_branch(int regime, double p, double t);

/// For t of order p^(1/2):
///   1: N <= p^(1/4)               p^(1/8) N^(71/96)
///   2: p^(1/4) < N <= p^(179/438) p^(23/192) N^(73/96)
///   3: N > p^(179/438)            p^(31/72)
/// The implied constants in "t of order p^(1/2)" are not modelled; only p is used.
RegimeValue corollary_bound(u64 p, u64 N);
double corollary_branch(int regime, double p, double N);

/// Sumset lower bound for power sets with |X| = delta1 M, |Y| = delta2 M:
/// min{ M^(9/8) d1^(3/4) d2, t^(1/8) M^(7/8) d1^(5/8) d2 }.
double lemma1_bound(u64 M, u64 t, double delta1, double delta2);

/// p |A|^4 |B|^4 E+(A,A) E+(B,B)
double lemma2_rhs(u64 p, u64 size_a, u64 size_b, u64 energy_a, u64 energy_b);

struct Lemma2Check {
    double lhs = 0.0; // |sum_{a,b} e_p(ab)|^8
    double rhs = 0.0;
    bool holds = false;
    u64 energy_a = 0;
    u64 energy_b = 0;
};

inline constexpr double lemma2_tolerance = 1e-9;

/// Bilinear sum against the energy bound; holds means lhs <= rhs (1 + 1e-9).
Lemma2Check lemma2_check(ResidueSet const& A, ResidueSet const& B,
                         EnergyBackend backend = EnergyBackend::hashed);

/// (p^(1/8) E^(1/4) log t, p^(1/4) t^(-1/4) E^(1/4) log t), with E >= t >= 2.
std::pair<double, double> lemma3_bounds(u64 p, u64 t, u64 energy);

/// Energy of the order-t subgroup:
///   1: t <= p^(3/5) (log p)^(-6/5)   t^(22/9) (log p)^(2/3)
///   2: otherwise                     t^3 p^(-1/3) (log p)^(4/3)
RegimeValue shkredov_energy_bound(u64 p, u64 t);
double shkredov_branch(int regime, double p, double t);

struct BoundInputs {
    u64 p = 0;
    u64 t = 0;
    u64 N = 0;
    std::vector<double> aux; // extra sizes (M, deltas, |A|, ...)
};

/// Evaluated bound next to the quantity it is meant to control.
struct BoundReport {
    std::string name;
    std::string regime;
    double bound_value = 0.0;
    double empirical_value = 0.0;
    double ratio = 0.0;
    bool o1_dropped = true;
    std::vector<std::string> flags;
    BoundInputs inputs;
};

BoundReport make_report(std::string name, RegimeValue const& bound, double empirical, BoundInputs inputs);
BoundReport make_report(std::string name, double bound, double empirical, BoundInputs inputs);

std::string regime_label(int regime);

} // namespace powsum::bounds
