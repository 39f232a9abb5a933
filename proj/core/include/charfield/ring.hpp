#pragma once

#include <compare>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "charfield/errors.hpp"
#include "charfield/rational.hpp"

namespace charfield {

// Exact carriers: prime fields F_p, extension fields F_{p^n}, modular rings
// Z/p^N and the rational field Q. Elements use canonical encodings so that
// equality is encoding equality and ordered containers are well-defined:
//   F_p, Z/p^N : the residue in [0, p) resp. [0, p^N)
//   F_{p^n}    : the integer sum a_i p^i for the coefficient vector (a_i)
//   Q          : the reduced fraction
// All values are immutable after construction and all operations are pure
// functions, so everything here can be shared freely across threads.

enum class RingKind { prime_field, extension_field, modular_ring, rational_field };

class RingSpec {
public:
    static RingSpec prime_field(long long p);
    // Modulus defaults to irreducible_modulus(p, n).
    static RingSpec extension_field(long long p, int n);
    static RingSpec extension_field(long long p, int n, std::vector<long long> modulus);
    static RingSpec modular_ring(long long p, int level);
    static RingSpec rational_field();

    RingKind kind() const { return kind_; }
    long long p() const { return p_; }
    int degree() const { return degree_; }
    int level() const { return level_; }
    // Monic, coefficients low-degree first, length degree()+1.
    const std::vector<long long>& modulus() const { return modulus_; }

    bool is_finite() const { return kind_ != RingKind::rational_field; }
    bool is_field() const { return kind_ != RingKind::modular_ring; }
    long long size() const; // InfiniteCarrier for Q

    // "fp:5", "fpn:3,2", "zmod:3,2", "q" (the CLI field syntax).
    std::string to_string() const;
    static RingSpec parse(const std::string& text);

    friend bool operator==(const RingSpec& a, const RingSpec& b) = default;

private:
    RingSpec() = default;
    RingKind kind_ = RingKind::rational_field;
    long long p_ = 0;
    int degree_ = 1;
    int level_ = 1;
    std::vector<long long> modulus_;
};

class Elt {
public:
    // `canonical` must already lie in the canonical range of the carrier
    // (BadConfig otherwise); elt_of reduces arbitrary values instead.
    Elt(RingSpec spec, long long canonical);
    Elt(RingSpec spec, Rat value);

    const RingSpec& spec() const { return spec_; }
    bool holds_int() const { return value_.index() == 0; }
    long long zval() const { return std::get<0>(value_); }
    const Rat& qval() const { return std::get<1>(value_); }

    // Comparisons look at the canonical value only; elements are expected to
    // share a carrier (operations verify that and raise SpecMismatch).
    friend bool operator==(const Elt& a, const Elt& b) { return a.value_ == b.value_; }
    friend bool operator<(const Elt& a, const Elt& b) { return a.value_ < b.value_; }

private:
    RingSpec spec_;
    std::variant<long long, Rat> value_;
};

struct SubgroupSpec {
    RingSpec ambient;
    std::vector<Elt> generators;
    std::vector<Elt> elements; // sorted canonical order, contains 0
    long long cardinality() const { return static_cast<long long>(elements.size()); }
};

// Ring operations. Binary operations require both elements to share one
// RingSpec (SpecMismatch otherwise); results are canonical.
Elt zero_of(const RingSpec& spec);
Elt one_of(const RingSpec& spec);
Elt elt_of(const RingSpec& spec, long long value); // reduces into canonical range
Elt elt_of(const RingSpec& spec, const Rat& value);

Elt add(const Elt& a, const Elt& b);
Elt sub(const Elt& a, const Elt& b);
Elt neg(const Elt& a);
Elt mul(const Elt& a, const Elt& b);
Elt inv(const Elt& a);   // NotAUnit for 0, and for multiples of p in Z/p^N
Elt halve(const Elt& a); // the unique y with y+y = a; CharTwo in characteristic 2

long long characteristic(const RingSpec& spec); // p for finite carriers, 0 for Q

// All elements exactly once in a deterministic order (ascending canonical
// encoding). InfiniteCarrier for Q.
std::vector<Elt> enumerate(const RingSpec& spec);

// Smallest additive subgroup containing the generators. InfiniteCarrier for Q.
SubgroupSpec additive_closure(const RingSpec& spec, const std::vector<Elt>& generators);

// If s is a coset x + K of an additive subgroup, returns (K, x) with x the
// first element of s in enumeration order; nullopt otherwise. EmptySet if s
// is empty.
std::optional<std::pair<SubgroupSpec, Elt>> coset_test(const RingSpec& spec,
                                                       const std::vector<Elt>& s);

// {t^2 : t in a}, sorted, deduplicated.
std::vector<Elt> squares_of_set(const RingSpec& spec, const std::vector<Elt>& a);

// The full additive subgroup lattice of a finite carrier, sorted by
// (cardinality, elements).
std::vector<SubgroupSpec> additive_subgroups(const RingSpec& spec);

// The first monic irreducible polynomial of degree n over F_p in the
// deterministic scan order of ascending integer encoding sum c_i p^i
// (constant term least significant). Coefficients low-degree first,
// length n+1, leading coefficient 1.
std::vector<long long> irreducible_modulus(long long p, int n);

// Textual element encodings used by the CLI and JSON reports:
//   F_p, Z/p^N : "k"
//   F_{p^n}    : the integer encoding is emitted; "a0+a1*t+..." also parses
//   Q          : "num/den" in lowest terms
std::string elt_to_string(const Elt& a);
Elt elt_from_string(const RingSpec& spec, const std::string& text);

} // namespace charfield
