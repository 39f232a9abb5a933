#pragma once

#include <string>
#include <utility>
#include <vector>

#include "charfield/errors.hpp"
#include "charfield/rational.hpp"

namespace charfield {

// Precision-tracked p-adic numbers. Everything here is an immutable value
// and every operation is a pure function, so values can be shared across
// threads freely.
//
// A nonzero value is stored as p^v * u + O(p^(v+N)) with the unit part
// u in [1, p^N), u not divisible by p, and relative precision N >= 1.
// A zero value carries only an absolute precision A, meaning the number is
// known to be divisible by p^A and nothing more; literals constructed from
// the exact integer 0 get a large sentinel precision and behave as exact.
//
// Precision propagates conservatively: addition intersects absolute
// precisions, multiplication and division intersect relative ones, and full
// cancellation yields a zero flagged with the surviving absolute precision
// rather than a guessed digit. Reading digits beyond what is known raises
// PrecisionExhausted.
class PAdic {
public:
    static constexpr int exact_zero_prec = 1 << 24;

    static PAdic zero(long long p, int abs_prec = exact_zero_prec);
    static PAdic from_integer(long long p, const Int& value, int rel_prec);
    static PAdic from_rational(long long p, const Rat& value, int rel_prec);
    // Internal canonical constructor: val + unit (reduced mod p^rel_prec).
    static PAdic from_unit(long long p, long long val, const Int& unit, int rel_prec);

    long long prime() const { return p_; }
    bool is_zero() const { return zero_; }
    bool is_exact_zero() const { return zero_ && abs_prec_ >= exact_zero_prec; }
    long long valuation() const; // PrecisionExhausted for a zero-flagged value
    int rel_prec() const;        // N; PrecisionExhausted for zero
    int abs_prec() const;        // v + N, or A for zero
    const Int& unit() const;     // PrecisionExhausted for zero

    // d_0 .. d_{N-1} of the unit part.
    std::vector<int> digits() const;

    // The value mod p^level as an integer in [0, p^level). Requires the value
    // to lie in Z_p (valuation >= 0, else ScaleError) and to be known at
    // least to absolute precision `level` (else PrecisionExhausted).
    Int residue(int level) const;

    // "p^v * (d0 + d1*p + ...) + O(p^(v+N))"; zeros print "0 + O(p^A)".
    std::string to_string() const;

private:
    PAdic() = default;
    long long p_ = 2;
    bool zero_ = true;
    int abs_prec_ = exact_zero_prec; // zeros only
    long long val_ = 0;              // nonzero only
    Int unit_ = 0;                   // nonzero only
    int rel_prec_ = 1;               // nonzero only
};

PAdic padd(const PAdic& a, const PAdic& b);
PAdic psub(const PAdic& a, const PAdic& b);
PAdic pmul(const PAdic& a, const PAdic& b);
// DivisionByZero when b carries a zero flag (b is not known to be nonzero).
PAdic pdiv(const PAdic& a, const PAdic& b);

// |a|_p = p^(-v), |0|_p = 0. Zero-flagged values report 0.
Rat pnorm(const PAdic& a);

// Equality to the shared precision: same prime, same valuation, unit parts
// agreeing mod p^min(Na, Nb). Zero-flagged values agree with zeros.
bool padic_agree(const PAdic& a, const PAdic& b);

// a is a square iff a = 0, or its valuation is even and the unit part is a
// square: leading digit a quadratic residue mod p for odd p, unit = 1 (mod 8)
// for p = 2 (which needs 3 known digits -> InsufficientPrecision below that).
bool is_square(const PAdic& a);

// Branch data for the canonical square root. For odd p, g is the smallest
// primitive root mod p and branch_residues = {g^k mod p : 1 <= k <= (p-1)/2};
// this set and its negation mod p partition the nonzero residues, and the
// canonical root is the one whose leading digit lies in branch_residues.
// For p = 2 the branch rule is "unit = 1 (mod 4)" and g is unused.
struct BranchTable {
    long long p = 0;
    long long g = 0;
    std::vector<long long> branch_residues;
};

BranchTable branch_table(long long p);

// Canonical square root by Newton lifting from the branch-selected root
// mod p (odd p) or by bit lifting from the root = 1 (mod 4) (p = 2, where the
// derivative 2t costs one digit of relative precision). NotASquare when
// is_square fails; zero input returns zero at half the absolute precision.
PAdic sqrt_hensel(const PAdic& a, const BranchTable& table);

// The same branch computed independently through the binomial series
// sqrt(1+z) = 1 + z/2 - z^2/8 + ... around the Teichmueller center e^(2k)
// matching the leading digit, with e the Teichmueller lift of g. Odd p only
// (UnsupportedPrime for p = 2). Agrees with sqrt_hensel to shared precision.
PAdic sqrt_series(const PAdic& a, const BranchTable& table);

// Teichmueller lift of a nonzero residue r mod p: the fixed point of
// x <- x^p at precision `prec` (the unique (p-1)-th root of unity = r mod p).
Int teichmuller(long long p, long long residue, int prec);

long long smallest_primitive_root(long long p);

// Square root of a quadratic residue mod an odd prime (Tonelli-Shanks).
long long sqrt_mod_p(long long a, long long p);

// The set center + p^radius_exp * Z_p.
struct Ball {
    PAdic center;
    long long radius_exp = 0;
};

// A product of two balls, e.g. E_k = (u0,v0) + p^k Z_p x p^(k+l) Z_p.
struct BallRect {
    Ball first;
    Ball second;
};

// Finite model of a ball inside Z_p: the residues
// {center + p^radius_exp * t mod p^level : 0 <= t < p^(level-radius_exp)},
// sorted. ScaleError when the ball is not contained in Z_p;
// PreconditionViolated when radius_exp > level or radius_exp < 0.
std::vector<long long> ball_residues(const Ball& ball, int level);

// Residue model of a product of balls, sorted pairs.
std::vector<std::pair<long long, long long>> ball_rect_residues(const BallRect& rect, int level);

// Exhaustive residue check of the pushforward identity
//   T((x0,y0) + (p^k Z_p)^2) = (x0+y0, (x0-y0)^2) + p^k Z_p x p^(k+l) Z_p
// at level `level`, where p^(-l) = |x0-y0|_p and k >= l+1.
bool lemma4_check(const PAdic& x0, const PAdic& y0, long long k, int level);

// {2ct + p^m t^2 mod p^level : t} = all residues mod p^level. Accepts m >= 0
// so the failing boundary case m = 0 can be demonstrated.
bool eq12_check(long long p, long long c, long long m, int level);

// S_1(u,v) = ((u + s(v))/2, (u - s(v))/2) and S_2 with the signs swapped,
// the two local inverses of T. Odd p; v must be a nonzero square.
std::pair<std::pair<PAdic, PAdic>, std::pair<PAdic, PAdic>>
s_maps(const PAdic& u, const PAdic& v, const BranchTable& table);

struct Lemma5Result {
    bool disjoint = false;    // S_1(E_k) and S_2(E_k) share no residue at the level
    bool jacobian_ok = false; // |residues(S_1(E_k))| = |residues(E_k)| * p^l
};

// Residue-level disjointness of the two square-root sheets and the
// change-of-variables counting identity with the constant integrand: the residue set of S_j(E_k) at the
// level is exactly p^l times larger than that of E_k, matching
// |det dS_1|_p = |s(v)|_p^(-1) = p^l. The v-axis is enumerated at level+l so
// that the square-root values are resolved at `level`.
Lemma5Result lemma5_check(const PAdic& u0, const PAdic& v0, long long k, int level);

// p^e as long long with an overflow guard (desk-scale levels only).
long long pow_ll(long long p, long long e);

} // namespace charfield
