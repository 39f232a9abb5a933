#include <doctest.h>

#include <algorithm>
#include <set>

#include "charfield/padic.hpp"
#include "charfield/rng.hpp"
#include "test_support.hpp"

using namespace charfield;

namespace {

PAdic pz(long long p, long long value, int prec = 8) {
    return PAdic::from_integer(p, to_z(value), prec);
}

} // namespace

TEST_CASE("arithmetic") {
    CHECK(padic_agree(pmul(pz(7, 2), pz(7, 3)), pz(7, 6)));

    // 1/3 in Q_7 at relative precision 2: the inverse of 3 mod 49 is 33,
    // checked here independently, and 33 = 5 + 4*7.
    PAdic third = pdiv(pz(7, 1, 2), pz(7, 3, 2));
    CHECK(third.unit() == 33);
    CHECK((33 * 3) % 49 == 1);
    CHECK(third.digits() == std::vector<int>{5, 4});

    // Digit carry across the valuation: 1 + 6 = 7.
    PAdic seven = padd(pz(7, 1), pz(7, 6));
    CHECK(seven.valuation() == 1);
    CHECK(seven.unit() == 1);
    CHECK(seven.rel_prec() == 7); // one digit was consumed by the carry

    CHECK_ERRC(padd(pz(7, 1), pz(5, 1)), Errc::spec_mismatch);
}

TEST_CASE("norm") {
    CHECK(pnorm(pz(7, 7)) == Rat(1, 7));
    CHECK(pnorm(PAdic::zero(7)) == 0);
    CHECK(pnorm(PAdic::from_rational(7, Rat(1, 3), 8)) == 1);
    CHECK(pnorm(PAdic::from_rational(7, Rat(3, 49), 8)) == 49);
}

TEST_CASE("precision tracking") {
    PAdic x = pz(7, 10, 4);
    PAdic cancel = psub(x, x);
    CHECK(cancel.is_zero());
    CHECK(cancel.abs_prec() == 4); // v + N of the operands
    CHECK_ERRC(cancel.residue(5), Errc::precision_exhausted);
    CHECK(cancel.residue(4) == 0);
    CHECK_ERRC(pdiv(pz(7, 1), cancel), Errc::division_by_zero);
    CHECK_ERRC(pz(7, 49, 3).residue(6), Errc::precision_exhausted);
    CHECK(pz(7, 49, 3).residue(5) == 49);
    CHECK_ERRC(PAdic::from_rational(7, Rat(1, 7), 4).residue(2), Errc::scale_error);

    // Multiplication intersects relative precision.
    CHECK(pmul(pz(7, 3, 5), pz(7, 2, 2)).rel_prec() == 2);
}

TEST_CASE("textual form") {
    CHECK(pz(7, 2).to_string() == "7^0 * (2) + O(7^8)");
    CHECK(pz(7, 14, 3).to_string() == "7^1 * (2) + O(7^4)");
    CHECK(PAdic::zero(7, 5).to_string() == "0 + O(7^5)");
    CHECK(PAdic::zero(7).to_string() == "0");
}

TEST_CASE("square classification") {
    CHECK(is_square(pz(7, 2)));  // 3^2 = 2 (mod 7)
    CHECK((3 * 3) % 7 == 2);
    CHECK(!is_square(pz(7, 7))); // odd valuation
    CHECK(is_square(pz(7, 9 * 49)));
    CHECK(!is_square(pz(7, 3))); // 3 is not a QR mod 7

    // 17 = 1 (mod 8); a root exists mod 64 by scan.
    CHECK(is_square(pz(2, 17)));
    bool found = false;
    for (long long r = 0; r < 64; ++r)
        if ((r * r) % 64 == 17) found = true;
    CHECK(found);
    CHECK(!is_square(pz(2, 5)));
    CHECK(!is_square(pz(2, 3)));
    CHECK_ERRC(is_square(pz(2, 17, 2)), Errc::insufficient_precision);
    CHECK(is_square(PAdic::zero(7)));
}

TEST_CASE("branch tables") {
    BranchTable t7 = branch_table(7);
    CHECK(t7.g == 3);
    CHECK(t7.branch_residues == std::vector<long long>{3, 2, 6});
    // 2 is not primitive mod 7 (2^3 = 1), so 3 really is smallest.
    CHECK((2 * 2 * 2) % 7 == 1);

    BranchTable t5 = branch_table(5);
    CHECK(t5.g == 2);
    CHECK(t5.branch_residues == std::vector<long long>{2, 4});

    BranchTable t2 = branch_table(2);
    CHECK(t2.p == 2);
    CHECK(t2.branch_residues.empty());

    // branch_residues and their negations partition the nonzero residues.
    for (long long p : {3ll, 5ll, 7ll, 11ll, 13ll}) {
        BranchTable t = branch_table(p);
        std::set<long long> all;
        for (long long r : t.branch_residues) {
            all.insert(r);
            all.insert((p - r) % p);
        }
        CHECK(static_cast<long long>(t.branch_residues.size()) == (p - 1) / 2);
        CHECK(static_cast<long long>(all.size()) == p - 1);
    }
}

TEST_CASE("canonical square root, odd p") {
    BranchTable t7 = branch_table(7);

    PAdic r4 = sqrt_hensel(pz(7, 4), t7);
    CHECK(padic_agree(r4, pz(7, 2))); // residues of +-2 are {2,5}, 2 is in branch

    PAdic r2 = sqrt_hensel(pz(7, 2), t7);
    CHECK(r2.residue(2) == 10); // 3 + 1*7, and 10^2 = 100 = 2 (mod 49)
    CHECK((10 * 10) % 49 == 2);
    CHECK(padic_agree(pmul(r2, r2), pz(7, 2)));

    // s(1) is -1: the residues of +-1 are {1, 6} and 6 = 3^3 lies in the
    // branch set, so the construction picks the nontrivial root.
    PAdic r1 = sqrt_hensel(pz(7, 1), t7);
    CHECK(padic_agree(r1, pz(7, -1)));

    CHECK_ERRC(sqrt_hensel(pz(7, 7), t7), Errc::not_a_square);
    CHECK_ERRC(sqrt_hensel(pz(5, 3, 8), branch_table(5)), Errc::not_a_square);
    CHECK_ERRC(sqrt_hensel(pz(7, 2), branch_table(5)), Errc::spec_mismatch);

    // Zero maps to zero at half the absolute precision.
    PAdic z = sqrt_hensel(PAdic::zero(7, 6), t7);
    CHECK(z.is_zero());
    CHECK(z.abs_prec() == 3);
    CHECK(sqrt_hensel(PAdic::zero(7), t7).is_exact_zero());
}

TEST_CASE("canonical square root, p = 2") {
    BranchTable t2 = branch_table(2);
    CHECK(padic_agree(sqrt_hensel(pz(2, 9), t2), pz(2, -3)));
    CHECK(padic_agree(sqrt_hensel(pz(2, 25), t2), pz(2, 5)));
    CHECK(sqrt_hensel(pz(2, 9), t2).rel_prec() == 7); // derivative 2t costs a digit
    CHECK(mod_pos(sqrt_hensel(pz(2, 17), t2).unit(), 4) == 1);
    PAdic r17 = sqrt_hensel(pz(2, 17), t2);
    CHECK(padic_agree(pmul(r17, r17), pz(2, 17)));
    CHECK_ERRC(sqrt_hensel(pz(2, 5), t2), Errc::not_a_square);
}

TEST_CASE("series square root") {
    BranchTable t7 = branch_table(7);
    CHECK_ERRC(sqrt_series(pz(2, 9), branch_table(2)), Errc::unsupported_prime);

    // Cross-algorithm agreement on the worked example and on random squares.
    CHECK(padic_agree(sqrt_series(pz(7, 2), t7), sqrt_hensel(pz(7, 2), t7)));
    for (long long p : {3ll, 5ll, 7ll}) {
        BranchTable t = branch_table(p);
        for (long long u = 1; u < p * p; ++u) {
            if (u % p == 0) continue;
            PAdic square = pmul(pz(p, u), pz(p, u));
            CHECK(padic_agree(sqrt_series(square, t), sqrt_hensel(square, t)));
        }
    }

    // At the series center all correction terms vanish: sqrt(eps^2) = eps.
    Int eps = teichmuller(7, 3, 8);
    PAdic eps_p = PAdic::from_integer(7, eps, 8);
    PAdic center = pmul(eps_p, eps_p);
    CHECK(padic_agree(sqrt_series(center, t7), eps_p));

    // Scaling: sqrt(4 * 25) = sqrt(4) * 5 in Q_5.
    BranchTable t5 = branch_table(5);
    PAdic s100 = sqrt_series(pz(5, 100), t5);
    CHECK(padic_agree(s100, pmul(sqrt_hensel(pz(5, 4), t5), pz(5, 5))));
    CHECK(s100.valuation() == 1);
}

TEST_CASE("teichmuller lift") {
    Int eps = teichmuller(7, 3, 8);
    Int mod = int_pow(7, 8);
    CHECK(mod_pos(eps, to_z(7)) == 3);
    Int pow6 = 1;
    for (int i = 0; i < 6; ++i) pow6 = mod_pos(pow6 * eps, mod);
    CHECK(pow6 == 1); // order divides p-1
    // Multiplicativity: teich(g)^2 = teich(g^2 mod p).
    CHECK(mod_pos(eps * eps, mod) == teichmuller(7, 2, 8));
}

TEST_CASE("scaling and branch coherence") {
    BranchTable t7 = branch_table(7);
    for (long long u : {1ll, 2ll, 4ll, 11ll}) {
        PAdic a = pmul(pz(7, u), pz(7, u));
        PAdic scaled = pmul(a, pz(7, 49));
        PAdic sa = sqrt_hensel(a, t7);
        PAdic ss = sqrt_hensel(scaled, t7);
        // s(p^2 a) = p s(a) exactly at matched precision.
        CHECK(padic_agree(ss, pmul(sa, pz(7, 7))));
    }
    // Same-branch roots never cancel mod p: the disjointness mechanism.
    std::vector<long long> units = {1, 2, 4};
    for (long long a : units) {
        for (long long b : units) {
            PAdic sa = sqrt_hensel(pz(7, a), t7);
            PAdic sb = sqrt_hensel(pz(7, b), t7);
            CHECK(mod_pos(sa.unit() + sb.unit(), to_z(7)) != 0);
        }
    }
}

TEST_CASE("ball residues") {
    CHECK(ball_residues({pz(3, 1), 1}, 2) == std::vector<long long>{1, 4, 7});
    CHECK(ball_residues({pz(3, 0), 2}, 2) == std::vector<long long>{0});
    CHECK(ball_residues({pz(5, 2), 1}, 2) == std::vector<long long>{2, 7, 12, 17, 22});
    CHECK_ERRC(ball_residues({PAdic::from_rational(3, Rat(1, 3), 6), 0}, 2), Errc::scale_error);
    CHECK_ERRC(ball_residues({pz(3, 1), -1}, 2), Errc::scale_error);
    CHECK_ERRC(ball_residues({pz(3, 1), 3}, 2), Errc::precondition_violated);
}

TEST_CASE("lemma4 pushforward identity") {
    CHECK(lemma4_check(pz(3, 0), pz(3, 1), 1, 4));
    CHECK(lemma4_check(pz(5, 0), pz(5, 5), 2, 5));
    CHECK(lemma4_check(pz(3, 1), pz(3, 4), 2, 4)); // l = 0 again, shifted base point
    CHECK_ERRC(lemma4_check(pz(3, 0), pz(3, 1), 0, 4), Errc::precondition_violated);
    CHECK_ERRC(lemma4_check(pz(3, 0), pz(3, 1), 1, 1), Errc::precondition_violated);
    CHECK(lemma4_check(pz(3, 0), pz(3, 1), 1, 2)); // level = k+l+1 is the boundary case
    CHECK_ERRC(lemma4_check(pz(3, 1), pz(3, 1), 1, 4), Errc::precondition_violated);
}

TEST_CASE("eq12 surjectivity") {
    CHECK(eq12_check(3, 1, 1, 3));
    CHECK(eq12_check(5, 2, 1, 3));
    // m = 0 fails already mod 3: {2t + t^2} hits only {0, 2, 1*...}
    CHECK(!eq12_check(3, 1, 0, 1));
    CHECK(eq12_check(3, 2, 2, 3));
    CHECK_ERRC(eq12_check(3, 3, 1, 3), Errc::precondition_violated);
}

TEST_CASE("s maps") {
    BranchTable t7 = branch_table(7);
    auto [s1, s2] = s_maps(pz(7, 0), pz(7, 1), t7);
    // s(1) = -1, so S_1(0, 1) = (-1/2, 1/2) = (3 + ..., 4 + ...) mod 7.
    CHECK(s1.first.residue(1) == 3);
    CHECK(s1.second.residue(1) == 4);
    CHECK(padic_agree(s2.first, s1.second));
    CHECK(padic_agree(s2.second, s1.first));

    auto [u1, u2] = s_maps(pz(7, 0), pz(7, 4), t7);
    CHECK(padic_agree(u1.first, pz(7, 1)));
    CHECK(padic_agree(u1.second, pz(7, -1)));

    // T(S_1(u, v)) = (u, v): sum is u, squared difference is v.
    for (long long u : {0ll, 1ll, 5ll}) {
        for (long long v : {1ll, 2ll, 4ll, 9ll}) {
            if (!is_square(pz(7, v))) continue;
            auto [a, b] = s_maps(pz(7, u), pz(7, v), t7);
            CHECK(padic_agree(padd(a.first, a.second), pz(7, u)));
            PAdic diff = psub(a.first, a.second);
            CHECK(padic_agree(pmul(diff, diff), pz(7, v)));
        }
    }
    CHECK_ERRC(s_maps(pz(7, 0), pz(7, 3), t7), Errc::not_a_square);
}

TEST_CASE("field operations commute with exact rational arithmetic") {
    // For random rationals a, b: embedding then operating must agree with
    // operating exactly in Q and then embedding, to the tracked precision.
    Rng rng(2718);
    for (long long p : {2ll, 3ll, 5ll, 7ll}) {
        for (int i = 0; i < 200; ++i) {
            auto draw = [&] {
                long long num = rng.range(-40, 40);
                long long den = rng.range(1, 40);
                Rat q(to_z(num), to_z(den));
                q.canonicalize();
                return q;
            };
            Rat a = draw(), b = draw();
            PAdic pa = PAdic::from_rational(p, a, 10);
            PAdic pb = PAdic::from_rational(p, b, 10);
            CHECK(padic_agree(padd(pa, pb), PAdic::from_rational(p, a + b, 10)));
            CHECK(padic_agree(psub(pa, pb), PAdic::from_rational(p, a - b, 10)));
            CHECK(padic_agree(pmul(pa, pb), PAdic::from_rational(p, a * b, 10)));
            if (b != 0) CHECK(padic_agree(pdiv(pa, pb), PAdic::from_rational(p, a / b, 10)));
            if (a != 0 && b != 0) {
                Rat prod = a * b;
                CHECK(pnorm(pmul(pa, pb)) == pnorm(PAdic::from_rational(p, prod, 4)));
            }
        }
    }
}

TEST_CASE("squaring descends to residue classes for odd p") {
    // (x + p^N u)^2 = x^2 (mod p^N): the squaring step of T is well-defined
    // on the residue model.
    Rng rng(314);
    for (long long p : {3ll, 5ll, 7ll}) {
        for (int level = 1; level <= 4; ++level) {
            long long pl = pow_ll(p, level);
            for (int i = 0; i < 25; ++i) {
                long long x = rng.range(0, pl - 1);
                long long u = rng.range(0, pl - 1);
                long long lifted = x + pl * u;
                CHECK((lifted * lifted) % pl == (x * x) % pl);
            }
        }
    }
}

TEST_CASE("lemma5 disjointness and jacobian counting") {
    auto r1 = lemma5_check(pz(7, 0), pz(7, 1), 1, 3);
    CHECK(r1.disjoint);
    CHECK(r1.jacobian_ok);

    auto r2 = lemma5_check(pz(3, 0), pz(3, 1), 1, 4);
    CHECK(r2.disjoint);
    CHECK(r2.jacobian_ok);

    // Scaled case: v0 = 49 has |s(v0)| = 1/7, so l = 1 and k >= 2.
    auto r3 = lemma5_check(pz(7, 0, 10), pz(7, 49, 10), 2, 5);
    CHECK(r3.disjoint);
    CHECK(r3.jacobian_ok);

    CHECK_ERRC(lemma5_check(pz(7, 0, 10), pz(7, 49, 10), 1, 5), Errc::precondition_violated);
    CHECK_ERRC(lemma5_check(pz(7, 0), pz(7, 3), 1, 3), Errc::not_a_square);
}
