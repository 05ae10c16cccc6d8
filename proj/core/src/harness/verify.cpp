#include "powsum/harness/verify.hpp"

#include "powsum/addcomb.hpp"
#include "powsum/bounds.hpp"
#include "powsum/expsum.hpp"
#include "powsum/random.hpp"
#include "powsum/residue_set.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace powsum::harness {

namespace {

double relative_error(double value, double expected)
{
    return std::abs(value - expected) / std::max(1.0, std::abs(expected));
}

ResidueSet random_set(Rng& rng, u64 p, u64 size)
{
    auto const values = rng.sample_distinct(p, size);
    return ResidueSet::from_values(p, values);
}

std::string describe(ResidueSet const& s)
{
    std::ostringstream out;
    out << '{';
    bool first = true;
    s.for_each([&](u64 x) {
        out << (first ? "" : ",") << x;
        first = false;
    });
    out << '}';
    return out.str();
}

} // namespace

std::vector<u64> primes_up_to(u64 cap)
{
    std::vector<u64> out;
    for (u64 n = 2; n <= cap; ++n)
        if (is_prime(n))
            out.push_back(n);
    return out;
}

SuiteResult verify_identities(u64 cap, u64 max_N, unsigned workers)
{
    SuiteResult result;
    result.name = "identity";
    for (u64 p : primes_up_to(cap)) {
        FieldCtx const field(p);
        auto const lambdas = select_lambdas(element_of_order(field, 1), LambdaSelection::exhaustive());
        for (u64 t : divisors(p - 1)) {
            SubgroupCtx const ctx = element_of_order(field, t);
            std::vector<u64> grid;
            for (u64 N = 1; N <= std::min(t, max_N); ++N)
                grid.push_back(N);
            auto const stats = scan_lambdas(ctx, grid, lambdas, workers);
            for (auto const& s : stats) {
                double const n = static_cast<double>(s.N);
                double const second = n * n + s.sum_sq;
                double const expected_second = static_cast<double>(p) * n;
                ++result.checks;
                if (relative_error(second, expected_second) <= parseval_tolerance)
                    ++result.passed;
                else {
                    std::ostringstream msg;
                    msg << "parseval p=" << p << " t=" << t << " g=" << ctx.g() << " N=" << s.N << ": sum |S|^2 = "
                        << second << ", expected " << expected_second;
                    result.failures.push_back(msg.str());
                }

                u64 const j = count_J(ctx, s.N);
                double const fourth = n * n * n * n + s.sum_fourth;
                double const expected_fourth = static_cast<double>(p) * static_cast<double>(j);
                ++result.checks;
                if (relative_error(fourth, expected_fourth) <= fourth_moment_tolerance)
                    ++result.passed;
                else {
                    std::ostringstream msg;
                    msg << "fourth-moment p=" << p << " t=" << t << " g=" << ctx.g() << " N=" << s.N
                        << ": sum |S|^4 = " << fourth << ", p*J = " << expected_fourth;
                    result.failures.push_back(msg.str());
                }
            }
        }
    }
    return result;
}

SuiteResult verify_backends(u64 cap, u64 pairs, u64 max_size, u64 seed)
{
    SuiteResult result;
    result.name = "backend";
    auto const primes = primes_up_to(std::min(cap, transform_modulus_limit));
    if (primes.empty())
        return result;
    Rng rng(seed);
    for (u64 i = 0; i < pairs; ++i) {
        u64 const p = primes[rng.below(primes.size())];
        u64 const limit = std::min(max_size, p);
        ResidueSet const A = random_set(rng, p, rng.between(1, limit));
        ResidueSet const B = random_set(rng, p, rng.between(1, limit));
        auto const naive = rep_counts(A, B, EnergyBackend::naive);
        auto const hashed = rep_counts(A, B, EnergyBackend::hashed);
        auto const transform = rep_counts(A, B, EnergyBackend::transform);
        ++result.checks;
        bool const same = naive == hashed && hashed == transform &&
                          naive.total() == static_cast<u64>(A.size()) * B.size();
        if (same)
            ++result.passed;
        else {
            std::ostringstream msg;
            msg << "backend mismatch p=" << p << " A=" << describe(A) << " B=" << describe(B)
                << " energies naive=" << naive.energy() << " hashed=" << hashed.energy()
                << " transform=" << transform.energy();
            result.failures.push_back(msg.str());
        }
    }
    return result;
}

SuiteResult verify_lemma2(u64 cap, u64 pairs, u64 seed)
{
    SuiteResult result;
    result.name = "lemma2";
    auto const primes = primes_up_to(cap);
    if (primes.empty())
        return result;
    Rng rng(seed);
    for (u64 i = 0; i < pairs; ++i) {
        u64 const p = primes[rng.below(primes.size())];
        ResidueSet A, B;
        if (i % 4 == 3) {
            // power sets of one subgroup: the structured case the inequality is used for
            FieldCtx const field(p);
            auto const divs = divisors(p - 1);
            SubgroupCtx const ctx = element_of_order(field, divs[rng.below(divs.size())]);
            A = PowerSet(ctx, rng.below(ctx.t()), rng.between(1, ctx.t())).elements();
            B = PowerSet(ctx, rng.below(ctx.t()), rng.between(1, ctx.t())).elements();
        } else {
            u64 const limit = std::min<u64>(p, 60);
            A = random_set(rng, p, rng.between(1, limit));
            B = random_set(rng, p, rng.between(1, limit));
        }
        auto const check = bounds::lemma2_check(A, B);
        ++result.checks;
        if (check.holds)
            ++result.passed;
        else {
            std::ostringstream msg;
            msg.precision(17);
            msg << "lemma2 violated p=" << p << " A=" << describe(A) << " B=" << describe(B) << " lhs=" << check.lhs
                << " rhs=" << check.rhs;
            result.failures.push_back(msg.str());
        }
    }
    return result;
}

SuiteResult verify_complete_sums(u64 cap, u64 primes, u64 lambdas, u64 seed)
{
    SuiteResult result;
    result.name = "complete";
    auto all = primes_up_to(cap);
    std::erase_if(all, [&](u64 p) { return p - 1 < lambdas; });
    Rng rng(seed);
    for (u64 idx : rng.sample_distinct(all.size(), std::min<u64>(primes, all.size()))) {
        u64 const p = all[idx];
        FieldCtx const field(p);
        SubgroupCtx const ctx(field, primitive_root(field));
        for (u64 lambda : rng.sample_distinct(p - 1, std::min<u64>(lambdas, p - 1))) {
            auto const s = eval_sum(ctx, lambda + 1, p - 1).value();
            ++result.checks;
            if (std::abs(s - std::complex<double>(-1.0, 0.0)) <= 1e-8)
                ++result.passed;
            else {
                std::ostringstream msg;
                msg.precision(17);
                msg << "complete sum p=" << p << " g=" << ctx.g() << " lambda=" << lambda + 1 << ": " << s.real()
                    << " + " << s.imag() << "i";
                result.failures.push_back(msg.str());
            }
        }
    }
    return result;
}

Lemma1Report lemma1_report(u64 configs, u64 cap, u64 seed)
{
    Lemma1Report report;
    auto primes = primes_up_to(cap);
    std::erase_if(primes, [](u64 p) { return p < 5; });
    Rng rng(seed);
    for (u64 i = 0; i < configs && !primes.empty(); ++i) {
        u64 const p = primes[rng.below(primes.size())];
        FieldCtx const field(p);
        auto divs = divisors(p - 1);
        std::erase_if(divs, [](u64 t) { return t < 2; });
        u64 const t = divs[rng.below(divs.size())];
        SubgroupCtx const ctx = element_of_order(field, t);

        Lemma1Entry e;
        e.p = p;
        e.t = t;
        e.M = rng.between(1, t);
        e.L1 = rng.below(t);
        e.L2 = rng.below(t);
        u64 const k1 = rng.between(1, e.M);
        u64 const k2 = rng.between(1, e.M);
        e.delta1 = static_cast<double>(k1) / static_cast<double>(e.M);
        e.delta2 = static_cast<double>(k2) / static_cast<double>(e.M);
        auto const A = PowerSet::subsample(ctx, e.L1, e.M, e.delta1, rng.next());
        auto const B = PowerSet::subsample(ctx, e.L2, e.M, e.delta2, rng.next());
        e.sumset_size = sumset(A.elements(), B.elements()).size();
        e.bound = bounds::lemma1_bound(e.M, t, e.delta1, e.delta2);
        e.ratio = static_cast<double>(e.sumset_size) / e.bound;
        report.entries.push_back(e);
    }
    if (!report.entries.empty())
        report.min_ratio = std::ranges::min(report.entries, {}, &Lemma1Entry::ratio).ratio;
    return report;
}

} // namespace powsum::harness
