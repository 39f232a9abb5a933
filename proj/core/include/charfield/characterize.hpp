#pragma once

#include <cstdint>
#include <map>
#include <optional>

#include "charfield/measure.hpp"
#include "charfield/report.hpp"
#include "charfield/ring.hpp"
#include "charfield/rng.hpp"

namespace charfield {

// The functional equation
//   f^2(u) f(v) f(-v) = f^2(0) f(u+v) f(u-v)
// characterizes independence of S = xi+eta and D = (xi-eta)^2 for an iid pair
// with mass function f (given f(0) > 0). feq_check evaluates it exactly over
// every pair with a potentially nonzero side and reports the first failure.

struct FeqVerdict {
    bool pass = true;
    std::optional<std::pair<Elt, Elt>> witness;
    Rat lhs = 0;
    Rat rhs = 0;
};

// Finite carriers check all pairs in enumeration order. On Q the check runs
// over every pair with a potentially nonzero side: (u,v) in S x (S cap -S)
// for the left side and ((a+b)/2, (a-b)/2) for a, b in S for the right side,
// S the support -- this covers the difference-closure the equation can reach.
FeqVerdict feq_check(const std::map<Elt, Rat>& f, const RingSpec& carrier);

// Asserts the equivalence for one mu with mu(0) > 0 on a finite field of
// odd characteristic: is_independent(push_T(mu,mu)) iff feq_check(mu)
// passes. PreconditionViolated otherwise.
Report lemma1_roundtrip(const Dist& mu);

// Support of an feq-passing f with f(0) > 0, verified closed under negation
// and addition. NotASubgroup if closure fails (the support of an
// equation-passing f with f(0) > 0 always closes up, so this is treated as a
// test failure, never an expected path).
SubgroupSpec support_subgroup(const std::map<Elt, Rat>& f, const RingSpec& carrier);

// Multiplicative finite difference: (mdiff f)(x) = f(x+h)/f(x), defined where
// both points carry a value; exact rational quotients stand in for additive
// log-differences, so "the third difference of a quadratic exponent
// vanishes" reads mdiff_iter(f, u, 3) = 1. ZeroValue if f vanishes on its
// domain.
std::map<Elt, Rat> mdiff(const std::map<Elt, Rat>& f, const RingSpec& carrier, const Elt& h);
std::map<Elt, Rat> mdiff_iter(const std::map<Elt, Rat>& f, const RingSpec& carrier,
                              const Elt& u, int order);

// Deterministic seeded distribution sampler: support drawn as a uniform
// random subset (resampled until the constraints hold), masses as integers
// in [1, mass_bound], then normalized exactly.
struct DistSampleOpts {
    long long mass_bound = 9;
    bool require_zero_mass = false;          // 0 must lie in the support
    int min_support = 1;
    std::optional<DistClass> required_class; // resample until classify matches
};

Dist sample_dist(Rng& rng, const RingSpec& carrier, const DistSampleOpts& opts);

// Random locally constant density at the given level: uniform random subset
// support, integer weights in [1, mass_bound], normalized to Haar mass 1.
StepDensity sample_density(Rng& rng, long long p, int level, long long mass_bound = 9);

// Scenario verifiers. Each runs its trials sequentially with per-trial
// generators derived from (seed, index), aggregates in index order and
// returns a Report whose serialization is byte-stable.

// lemma1: the independence/functional-equation equivalence over `trials`
// random mu with mu(0) > 0.
Report lemma1_verify(const RingSpec& carrier, long long trials, std::uint64_t seed);

// theorem1, on a finite field of odd characteristic:
//  (a) every shift of every Haar subgroup distribution is independent,
//  (b) `trials` random Other-class mu all fail independence,
//  (c) exhaustively over uniform-on-subset distributions, independence holds
//      iff the subset is a subgroup coset (carriers of size <= 9).
Report theorem1_verify(const RingSpec& carrier, long long trials, std::uint64_t seed);

// theorem2, the refutation harness on Q: seeded random nondegenerate mu with
// support in the given radius/denominator grid; any independence pass is a
// counterexample (expected count 0).
Report theorem2_search(long long radius, long long denom_bound, long long trials,
                       std::uint64_t seed);

// remark1, on characteristic-2 fields: pairs with a nondegenerate component
// are dependent; on F_2 additionally exhaustive over all pmfs with
// denominator <= 4.
Report remark1_verify(const RingSpec& carrier, long long trials, std::uint64_t seed);

// remark2: mu = (E_-e + E_e)/2, nu = E_0 gives independent (S, D) while
// classify(mu) = Other -- the non-iid escape hatch.
Report remark2_counterexample(const RingSpec& carrier);

// lemma3: canonical sqrt laws on random squares: s(x)^2 = x, valuation
// halves, branch
// residue in the table, series agrees with Hensel, s(p^2 x) = p s(x).
Report lemma3_verify(long long p, long long trials, int prec, std::uint64_t seed);

// Deterministic grids plus seeded extras for the residue-level lemmas.
Report lemma4_verify(long long p, int max_level, long long extra_samples, std::uint64_t seed);
Report lemma5_verify(long long p, int level, long long extra_samples, std::uint64_t seed);
Report eq12_verify(long long p, int level);

// theorem3, the residue model for odd p: the Haar density of p^m Z_p passes
// feq_check on Z/p^level and residue_SD_test; random non-Haar densities fail
// feq_check and fail residue_SD_test at some level <= level.
Report theorem3_verify(long long p, int m, int level, long long trials, std::uint64_t seed);

// remark3, for Q_2: exact equation violation (lhs 0, rhs 2^(4m)) for the Haar
// density of 2^m Z_2 at u = v in 2^(m-1) Z_2 \ 2^m Z_2, plus the dependence
// witness of the Z/2^level residue model.
Report remark3_verify(int m, int level);

} // namespace charfield
