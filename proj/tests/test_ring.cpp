#include <doctest.h>

#include <algorithm>
#include <set>

#include "charfield/ring.hpp"
#include "test_support.hpp"

using namespace charfield;

namespace {

// Independent oracle: multiply two F_{p^n} elements coefficient-wise and
// reduce by long division, without going through the library encodings.
long long oracle_ext_mul(long long a, long long b, long long p, const std::vector<long long>& mod) {
    int n = static_cast<int>(mod.size()) - 1;
    std::vector<long long> va(n), vb(n), prod(2 * n - 1, 0);
    for (int i = 0; i < n; ++i) {
        va[i] = a % p;
        a /= p;
        vb[i] = b % p;
        b /= p;
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) prod[i + j] = (prod[i + j] + va[i] * vb[j]) % p;
    for (int d = 2 * n - 2; d >= n; --d) {
        long long c = prod[d];
        if (c == 0) continue;
        for (int i = 0; i <= n; ++i)
            prod[d - n + i] = ((prod[d - n + i] - c * mod[i]) % p + p) % p;
    }
    long long enc = 0;
    for (int i = n - 1; i >= 0; --i) enc = enc * p + prod[i];
    return enc;
}

// Independent oracle: the halving of a by scanning for y with y + y = a.
Elt oracle_halve(const RingSpec& spec, const Elt& a) {
    for (const Elt& y : enumerate(spec))
        if (add(y, y) == a) return y;
    FAIL("no halving found");
    return a;
}

bool oracle_quadratic_irreducible(long long p, long long c0, long long c1) {
    for (long long x = 0; x < p; ++x)
        if ((x * x + c1 * x + c0) % p == 0) return false;
    return true;
}

} // namespace

TEST_CASE("prime field arithmetic") {
    RingSpec f5 = RingSpec::prime_field(5);
    CHECK(mul(Elt(f5, 2), Elt(f5, 3)) == Elt(f5, 1));
    CHECK(add(Elt(f5, 4), Elt(f5, 3)) == Elt(f5, 2));
    CHECK(neg(Elt(f5, 2)) == Elt(f5, 3));
    CHECK(inv(Elt(f5, 3)) == Elt(f5, 2));
    CHECK_ERRC(inv(zero_of(f5)), Errc::not_a_unit);
    CHECK_ERRC(RingSpec::prime_field(6), Errc::bad_config);
}

TEST_CASE("modular ring units") {
    RingSpec z9 = RingSpec::modular_ring(3, 2);
    CHECK(mul(Elt(z9, 4), Elt(z9, 7)) == Elt(z9, 1));
    CHECK(inv(Elt(z9, 4)) == Elt(z9, 7));
    CHECK_ERRC(inv(Elt(z9, 3)), Errc::not_a_unit);
    CHECK(characteristic(z9) == 3);
}

TEST_CASE("extension field multiplication matches the polynomial oracle") {
    RingSpec f9 = RingSpec::extension_field(3, 2);
    // t^2 + 1 is the canonical modulus, so t * t = -1 = 2.
    Elt t(f9, 3);
    CHECK(mul(t, t) == Elt(f9, 2));
    for (long long a = 0; a < 9; ++a)
        for (long long b = 0; b < 9; ++b)
            CHECK(mul(Elt(f9, a), Elt(f9, b)) == Elt(f9, oracle_ext_mul(a, b, 3, f9.modulus())));
    for (long long a = 1; a < 9; ++a) CHECK(mul(Elt(f9, a), inv(Elt(f9, a))) == one_of(f9));
}

TEST_CASE("halve") {
    RingSpec f5 = RingSpec::prime_field(5);
    CHECK(halve(Elt(f5, 1)) == Elt(f5, 3));
    CHECK(halve(zero_of(f5)) == zero_of(f5));
    RingSpec f4 = RingSpec::extension_field(2, 2);
    CHECK_ERRC(halve(one_of(f4)), Errc::char_two);
    RingSpec q = RingSpec::rational_field();
    CHECK(halve(Elt(q, Rat(1))) == Elt(q, Rat(1, 2)));

    for (const RingSpec& spec : {RingSpec::prime_field(5), RingSpec::prime_field(7),
                                 RingSpec::extension_field(3, 2), RingSpec::modular_ring(3, 2)}) {
        for (const Elt& a : enumerate(spec)) {
            CHECK(halve(add(a, a)) == a);
            CHECK(add(halve(a), halve(a)) == a);
            CHECK(halve(a) == oracle_halve(spec, a));
        }
    }
}

TEST_CASE("characteristic") {
    CHECK(characteristic(RingSpec::prime_field(7)) == 7);
    CHECK(characteristic(RingSpec::rational_field()) == 0);
    CHECK(characteristic(RingSpec::extension_field(3, 2)) == 3);
}

TEST_CASE("enumerate") {
    RingSpec f3 = RingSpec::prime_field(3);
    std::vector<Elt> all = enumerate(f3);
    REQUIRE(all.size() == 3);
    CHECK(all[0] == Elt(f3, 0));
    CHECK(all[1] == Elt(f3, 1));
    CHECK(all[2] == Elt(f3, 2));
    CHECK(enumerate(RingSpec::extension_field(3, 2)).size() == 9);
    CHECK_ERRC(enumerate(RingSpec::rational_field()), Errc::infinite_carrier);
    std::set<Elt> dedup(all.begin(), all.end());
    CHECK(dedup.size() == all.size());
    CHECK(enumerate(f3) == all);
}

TEST_CASE("additive closure") {
    RingSpec f5 = RingSpec::prime_field(5);
    CHECK(additive_closure(f5, {Elt(f5, 1)}).cardinality() == 5);
    CHECK(additive_closure(f5, {}).cardinality() == 1);

    RingSpec f9 = RingSpec::extension_field(3, 2);
    SubgroupSpec k = additive_closure(f9, {Elt(f9, 3)}); // generated by t
    CHECK(k.cardinality() == 3);
    CHECK(k.elements == std::vector<Elt>{Elt(f9, 0), Elt(f9, 3), Elt(f9, 6)});

    // Closure output is a subgroup coset with shift 0.
    for (const RingSpec& spec : {f5, f9}) {
        for (const Elt& g : enumerate(spec)) {
            SubgroupSpec sub = additive_closure(spec, {g});
            auto res = coset_test(spec, sub.elements);
            REQUIRE(res.has_value());
            CHECK(res->second == zero_of(spec));
            CHECK(res->first.elements == sub.elements);
        }
    }
    CHECK_ERRC(additive_closure(RingSpec::rational_field(), {}), Errc::infinite_carrier);
}

TEST_CASE("coset test") {
    RingSpec f5 = RingSpec::prime_field(5);
    auto single = coset_test(f5, {Elt(f5, 2)});
    REQUIRE(single.has_value());
    CHECK(single->first.cardinality() == 1);
    CHECK(single->second == Elt(f5, 2));

    CHECK(!coset_test(f5, {Elt(f5, 1), Elt(f5, 4)}).has_value());

    RingSpec f9 = RingSpec::extension_field(3, 2);
    auto sub = coset_test(f9, {Elt(f9, 0), Elt(f9, 3), Elt(f9, 6)});
    REQUIRE(sub.has_value());
    CHECK(sub->second == zero_of(f9));
    CHECK(sub->first.cardinality() == 3);

    CHECK_ERRC(coset_test(f5, {}), Errc::empty_set);

    // Reconstruction: a positive verdict means s = shift + K exactly.
    auto shifted = coset_test(f9, {Elt(f9, 1), Elt(f9, 4), Elt(f9, 7)});
    REQUIRE(shifted.has_value());
    std::set<Elt> rebuilt;
    for (const Elt& x : shifted->first.elements) rebuilt.insert(add(shifted->second, x));
    CHECK(rebuilt == std::set<Elt>{Elt(f9, 1), Elt(f9, 4), Elt(f9, 7)});
}

TEST_CASE("squares of sets") {
    RingSpec f5 = RingSpec::prime_field(5);
    CHECK(squares_of_set(f5, enumerate(f5)) == std::vector<Elt>{Elt(f5, 0), Elt(f5, 1), Elt(f5, 4)});
    RingSpec f7 = RingSpec::prime_field(7);
    CHECK(squares_of_set(f7, enumerate(f7)) ==
          std::vector<Elt>{Elt(f7, 0), Elt(f7, 1), Elt(f7, 2), Elt(f7, 4)});
    CHECK(squares_of_set(f5, {zero_of(f5)}) == std::vector<Elt>{zero_of(f5)});

    // |squares| = (q+1)/2 for odd q.
    for (const RingSpec& spec :
         {RingSpec::prime_field(5), RingSpec::prime_field(7), RingSpec::prime_field(11),
          RingSpec::extension_field(3, 2)}) {
        CHECK(static_cast<long long>(squares_of_set(spec, enumerate(spec)).size()) ==
              (spec.size() + 1) / 2);
    }
}

TEST_CASE("irreducible modulus scan") {
    CHECK(irreducible_modulus(3, 2) == std::vector<long long>{1, 0, 1});
    CHECK(irreducible_modulus(2, 2) == std::vector<long long>{1, 1, 1});
    CHECK(irreducible_modulus(5, 2) == std::vector<long long>{2, 0, 1});
    // Oracle: the returned quadratic has no root and every earlier candidate
    // in scan order does (root scan decides irreducibility in degree 2).
    for (long long p : {3ll, 5ll, 7ll}) {
        auto mod = irreducible_modulus(p, 2);
        CHECK(oracle_quadratic_irreducible(p, mod[0], mod[1]));
        long long winner = mod[0] + p * mod[1];
        for (long long enc = 0; enc < winner; ++enc)
            CHECK(!oracle_quadratic_irreducible(p, enc % p, enc / p));
    }
    CHECK(irreducible_modulus(2, 3) == std::vector<long long>{1, 1, 0, 1});
}

TEST_CASE("additive subgroup lattice") {
    CHECK(additive_subgroups(RingSpec::prime_field(5)).size() == 2);
    auto f9_subs = additive_subgroups(RingSpec::extension_field(3, 2));
    CHECK(f9_subs.size() == 6);
    std::vector<long long> sizes;
    for (const auto& s : f9_subs) sizes.push_back(s.cardinality());
    CHECK(sizes == std::vector<long long>{1, 3, 3, 3, 3, 9});
    CHECK(additive_subgroups(RingSpec::modular_ring(3, 2)).size() == 3);
}

TEST_CASE("element encodings") {
    RingSpec f9 = RingSpec::extension_field(3, 2);
    CHECK(elt_from_string(f9, "1+2*t") == Elt(f9, 7));
    CHECK(elt_from_string(f9, "t") == Elt(f9, 3));
    CHECK(elt_from_string(f9, "t^1") == Elt(f9, 3));
    CHECK(elt_from_string(f9, "7") == Elt(f9, 7));
    CHECK(elt_to_string(Elt(f9, 7)) == "7"); // integer form emitted
    RingSpec q = RingSpec::rational_field();
    CHECK(elt_from_string(q, "-3/6") == Elt(q, Rat(-1, 2)));
    CHECK(elt_to_string(Elt(q, Rat(-1, 2))) == "-1/2");
    for (const RingSpec& spec : {RingSpec::prime_field(7), f9, RingSpec::modular_ring(5, 2)}) {
        for (const Elt& a : enumerate(spec)) CHECK(elt_from_string(spec, elt_to_string(a)) == a);
    }
    CHECK_ERRC(elt_from_string(f9, ""), Errc::bad_config);
    CHECK_ERRC(elt_from_string(f9, "t^5"), Errc::bad_config);
}

TEST_CASE("spec mismatch is detected") {
    RingSpec f5 = RingSpec::prime_field(5);
    RingSpec f7 = RingSpec::prime_field(7);
    CHECK_ERRC(add(Elt(f5, 1), Elt(f7, 1)), Errc::spec_mismatch);
    CHECK_ERRC(mul(Elt(f5, 1), Elt(f7, 1)), Errc::spec_mismatch);
}

TEST_CASE("ring spec parsing") {
    CHECK(RingSpec::parse("fp:7") == RingSpec::prime_field(7));
    CHECK(RingSpec::parse("fpn:3,2") == RingSpec::extension_field(3, 2));
    CHECK(RingSpec::parse("zmod:3,4") == RingSpec::modular_ring(3, 4));
    CHECK(RingSpec::parse("q") == RingSpec::rational_field());
    CHECK(RingSpec::parse("fp:7").to_string() == "fp:7");
    CHECK_ERRC(RingSpec::parse("fp:8"), Errc::bad_config);
    CHECK_ERRC(RingSpec::parse("nope:3"), Errc::bad_config);
    CHECK_ERRC(RingSpec::rational_field().size(), Errc::infinite_carrier);
}
