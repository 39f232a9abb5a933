#include "charfield/padic.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace charfield {

namespace {

Int int_pow_z(long long p, long long e) {
    return int_pow(p, static_cast<unsigned long>(e));
}

Int powm(const Int& base, const Int& exp, const Int& mod) {
    Int r;
    mpz_powm(r.get_mpz_t(), base.get_mpz_t(), exp.get_mpz_t(), mod.get_mpz_t());
    return r;
}

Int invert(const Int& a, const Int& mod) {
    Int r;
    if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), mod.get_mpz_t()) == 0)
        fail(Errc::not_a_unit, "no inverse modulo p^k");
    return r;
}

bool in_branch(const BranchTable& table, long long residue) {
    return std::find(table.branch_residues.begin(), table.branch_residues.end(), residue) !=
           table.branch_residues.end();
}

} // namespace

long long pow_ll(long long p, long long e) {
    long long r = 1;
    for (long long i = 0; i < e; ++i) {
        if (r > (1ll << 31) / p)
            fail(Errc::bad_config, "residue level too large for exact modeling");
        r *= p;
    }
    return r;
}

// --- PAdic ---

PAdic PAdic::zero(long long p, int abs_prec) {
    if (!is_prime(p)) fail(Errc::bad_config, "p must be prime");
    PAdic x;
    x.p_ = p;
    x.zero_ = true;
    x.abs_prec_ = std::min(abs_prec, exact_zero_prec);
    return x;
}

PAdic PAdic::from_unit(long long p, long long val, const Int& unit, int rel_prec) {
    if (!is_prime(p)) fail(Errc::bad_config, "p must be prime");
    if (rel_prec < 1) fail(Errc::precision_exhausted, "no digits remain");
    Int modulus = int_pow_z(p, rel_prec);
    Int u = mod_pos(unit, modulus);
    if (u == 0) return zero(p, static_cast<int>(val) + rel_prec);
    long long shift = int_valuation(u, p);
    if (shift > 0) {
        // Cancellation produced a leading zero digit: fold it into the
        // valuation and give up the corresponding relative precision.
        Int pv = int_pow_z(p, shift);
        u /= pv;
        val += shift;
        rel_prec -= static_cast<int>(shift);
    }
    PAdic x;
    x.p_ = p;
    x.zero_ = false;
    x.val_ = val;
    x.unit_ = std::move(u);
    x.rel_prec_ = rel_prec;
    return x;
}

PAdic PAdic::from_integer(long long p, const Int& value, int rel_prec) {
    if (value == 0) return zero(p);
    long long v = int_valuation(value, p);
    Int unit = value / int_pow_z(p, v);
    return from_unit(p, v, unit, rel_prec);
}

PAdic PAdic::from_rational(long long p, const Rat& value, int rel_prec) {
    if (value == 0) return zero(p);
    long long vnum = int_valuation(value.get_num(), p);
    long long vden = int_valuation(value.get_den(), p);
    Int num = value.get_num() / int_pow_z(p, vnum);
    Int den = value.get_den() / int_pow_z(p, vden);
    Int modulus = int_pow_z(p, rel_prec);
    Int unit = mod_pos(num * invert(den, modulus), modulus);
    return from_unit(p, vnum - vden, unit, rel_prec);
}

long long PAdic::valuation() const {
    if (zero_) fail(Errc::precision_exhausted, "valuation of a value not known to be nonzero");
    return val_;
}

int PAdic::rel_prec() const {
    if (zero_) fail(Errc::precision_exhausted, "relative precision of zero");
    return rel_prec_;
}

int PAdic::abs_prec() const {
    return zero_ ? abs_prec_ : static_cast<int>(val_) + rel_prec_;
}

const Int& PAdic::unit() const {
    if (zero_) fail(Errc::precision_exhausted, "unit part of zero");
    return unit_;
}

std::vector<int> PAdic::digits() const {
    if (zero_) return {};
    std::vector<int> out;
    out.reserve(static_cast<size_t>(rel_prec_));
    Int u = unit_;
    Int prime = static_cast<long>(p_);
    for (int i = 0; i < rel_prec_; ++i) {
        Int d = mod_pos(u, prime);
        out.push_back(static_cast<int>(d.get_si()));
        u = (u - d) / prime;
    }
    return out;
}

Int PAdic::residue(int level) const {
    if (zero_) {
        if (abs_prec_ >= level) return 0;
        fail(Errc::precision_exhausted, "zero known only to O(p^" + std::to_string(abs_prec_) + ")");
    }
    if (val_ < 0) fail(Errc::scale_error, "value is not a p-adic integer");
    if (val_ >= level) return 0;
    if (abs_prec() < level)
        fail(Errc::precision_exhausted, "residue level exceeds known precision");
    Int value = unit_ * int_pow_z(p_, val_);
    return mod_pos(value, int_pow_z(p_, level));
}

std::string PAdic::to_string() const {
    if (zero_) {
        if (is_exact_zero()) return "0";
        return "0 + O(" + std::to_string(p_) + "^" + std::to_string(abs_prec_) + ")";
    }
    std::ostringstream os;
    os << p_ << "^" << val_ << " * (";
    auto ds = digits();
    os << ds[0];
    for (size_t i = 1; i < ds.size(); ++i) {
        if (ds[i] == 0) continue;
        os << " + " << ds[i] << "*" << p_;
        if (i > 1) os << "^" << i;
    }
    os << ") + O(" << p_ << "^" << (val_ + rel_prec_) << ")";
    return os.str();
}

namespace {

void require_same_prime(const PAdic& a, const PAdic& b) {
    if (a.prime() != b.prime()) fail(Errc::spec_mismatch, "values from different Q_p");
}

PAdic pneg(const PAdic& a) {
    if (a.is_zero()) return a;
    Int modulus = int_pow(a.prime(), static_cast<unsigned long>(a.rel_prec()));
    return PAdic::from_unit(a.prime(), a.valuation(), modulus - a.unit(), a.rel_prec());
}

int clamp_prec(long long prec) {
    return static_cast<int>(std::min<long long>(prec, PAdic::exact_zero_prec));
}

} // namespace

PAdic padd(const PAdic& a, const PAdic& b) {
    require_same_prime(a, b);
    const long long p = a.prime();
    if (a.is_zero() && b.is_zero())
        return PAdic::zero(p, std::min(a.abs_prec(), b.abs_prec()));
    if (a.is_zero() || b.is_zero()) {
        const PAdic& z = a.is_zero() ? a : b;
        const PAdic& x = a.is_zero() ? b : a;
        if (x.valuation() >= z.abs_prec()) return PAdic::zero(p, z.abs_prec());
        int window = std::min(x.abs_prec(), z.abs_prec()) - static_cast<int>(x.valuation());
        return PAdic::from_unit(p, x.valuation(), x.unit(), window);
    }
    long long m = std::min(a.valuation(), b.valuation());
    int abs = std::min(a.abs_prec(), b.abs_prec());
    int window = abs - static_cast<int>(m);
    Int sum = a.unit() * int_pow(p, static_cast<unsigned long>(a.valuation() - m)) +
              b.unit() * int_pow(p, static_cast<unsigned long>(b.valuation() - m));
    return PAdic::from_unit(p, m, sum, window);
}

PAdic psub(const PAdic& a, const PAdic& b) { return padd(a, pneg(b)); }

PAdic pmul(const PAdic& a, const PAdic& b) {
    require_same_prime(a, b);
    const long long p = a.prime();
    if (a.is_zero() && b.is_zero())
        return PAdic::zero(p, clamp_prec(static_cast<long long>(a.abs_prec()) + b.abs_prec()));
    if (a.is_zero() || b.is_zero()) {
        const PAdic& z = a.is_zero() ? a : b;
        const PAdic& x = a.is_zero() ? b : a;
        return PAdic::zero(p, clamp_prec(static_cast<long long>(z.abs_prec()) + x.valuation()));
    }
    int n = std::min(a.rel_prec(), b.rel_prec());
    return PAdic::from_unit(p, a.valuation() + b.valuation(), a.unit() * b.unit(), n);
}

PAdic pdiv(const PAdic& a, const PAdic& b) {
    require_same_prime(a, b);
    if (b.is_zero()) fail(Errc::division_by_zero, "divisor is not known to be nonzero");
    const long long p = a.prime();
    if (a.is_zero()) return PAdic::zero(p, clamp_prec(static_cast<long long>(a.abs_prec()) - b.valuation()));
    int n = std::min(a.rel_prec(), b.rel_prec());
    Int modulus = int_pow(p, static_cast<unsigned long>(n));
    Int unit = mod_pos(a.unit() * invert(b.unit(), modulus), modulus);
    return PAdic::from_unit(p, a.valuation() - b.valuation(), unit, n);
}

Rat pnorm(const PAdic& a) {
    if (a.is_zero()) return Rat(0);
    return rat_pow(a.prime(), -a.valuation());
}

bool padic_agree(const PAdic& a, const PAdic& b) {
    if (a.prime() != b.prime()) return false;
    if (a.is_zero() || b.is_zero()) {
        if (a.is_zero() && b.is_zero()) return true;
        const PAdic& x = a.is_zero() ? b : a;
        const PAdic& z = a.is_zero() ? a : b;
        // A nonzero value agrees with an inexact zero only if its valuation
        // lies beyond the zero's known precision.
        return x.valuation() >= z.abs_prec();
    }
    if (a.valuation() != b.valuation()) return false;
    int n = std::min(a.rel_prec(), b.rel_prec());
    Int modulus = int_pow(a.prime(), static_cast<unsigned long>(n));
    return mod_pos(a.unit() - b.unit(), modulus) == 0;
}

bool is_square(const PAdic& a) {
    if (a.is_zero()) {
        if (a.is_exact_zero()) return true;
        fail(Errc::insufficient_precision, "square test of an inexact zero");
    }
    const long long p = a.prime();
    if (p == 2 && a.rel_prec() < 3)
        fail(Errc::insufficient_precision, "p = 2 square test needs 3 known digits");
    if (a.valuation() % 2 != 0) return false;
    if (p == 2) return mod_pos(a.unit(), 8) == 1;
    Int lead = mod_pos(a.unit(), to_z(p));
    return powm(lead, to_z((p - 1) / 2), to_z(p)) == 1;
}

long long smallest_primitive_root(long long p) {
    if (p == 2) return 1;
    std::vector<long long> prime_factors;
    long long m = p - 1;
    for (long long d = 2; d * d <= m; ++d) {
        if (m % d == 0) {
            prime_factors.push_back(d);
            while (m % d == 0) m /= d;
        }
    }
    if (m > 1) prime_factors.push_back(m);
    Int prime = static_cast<long>(p);
    for (long long g = 2; g < p; ++g) {
        bool primitive = true;
        for (long long q : prime_factors) {
            if (powm(Int(static_cast<long>(g)), Int(static_cast<long>((p - 1) / q)), prime) == 1) {
                primitive = false;
                break;
            }
        }
        if (primitive) return g;
    }
    fail(Errc::bad_config, "no primitive root found"); // unreachable for prime p
}

BranchTable branch_table(long long p) {
    if (!is_prime(p)) fail(Errc::bad_config, "p must be prime");
    BranchTable t;
    t.p = p;
    if (p == 2) return t; // branch rule: unit = 1 (mod 4)
    t.g = smallest_primitive_root(p);
    Int prime = static_cast<long>(p);
    Int cur = 1;
    for (long long k = 1; k <= (p - 1) / 2; ++k) {
        cur = mod_pos(cur * to_z(t.g), prime);
        t.branch_residues.push_back(cur.get_si());
    }
    return t;
}

long long sqrt_mod_p(long long a, long long p) {
    a = ((a % p) + p) % p;
    if (a == 0) return 0;
    Int prime = static_cast<long>(p);
    Int az = static_cast<long>(a);
    if (powm(az, Int(static_cast<long>((p - 1) / 2)), prime) != 1)
        fail(Errc::not_a_square, std::to_string(a) + " is not a QR mod " + std::to_string(p));
    if (p % 4 == 3) return powm(az, Int(static_cast<long>((p + 1) / 4)), prime).get_si();
    // Tonelli-Shanks.
    long long q = p - 1, s = 0;
    while (q % 2 == 0) {
        q /= 2;
        ++s;
    }
    long long nonresidue = 2;
    while (powm(Int(static_cast<long>(nonresidue)), Int(static_cast<long>((p - 1) / 2)), prime) == 1)
        ++nonresidue;
    Int z = powm(Int(static_cast<long>(nonresidue)), Int(static_cast<long>(q)), prime);
    Int t = powm(az, Int(static_cast<long>(q)), prime);
    Int r = powm(az, Int(static_cast<long>((q + 1) / 2)), prime);
    long long mexp = s;
    while (t != 1) {
        Int t2 = t;
        long long i = 0;
        while (t2 != 1) {
            t2 = mod_pos(t2 * t2, prime);
            ++i;
        }
        Int b = z;
        for (long long j = 0; j < mexp - i - 1; ++j) b = mod_pos(b * b, prime);
        r = mod_pos(r * b, prime);
        z = mod_pos(b * b, prime);
        t = mod_pos(t * z, prime);
        mexp = i;
    }
    return r.get_si();
}

PAdic sqrt_hensel(const PAdic& a, const BranchTable& table) {
    if (table.p != a.prime()) fail(Errc::spec_mismatch, "branch table for a different prime");
    const long long p = a.prime();
    if (a.is_zero())
        return a.is_exact_zero() ? PAdic::zero(p) : PAdic::zero(p, (a.abs_prec() + 1) / 2);
    if (!is_square(a)) fail(Errc::not_a_square, a.to_string() + " is not a square");
    const long long v = a.valuation();
    const int n = a.rel_prec();
    if (p != 2) {
        long long r0 = sqrt_mod_p(mod_pos(a.unit(), to_z(p)).get_si(), p);
        if (!in_branch(table, r0)) r0 = p - r0;
        // Newton lifting t <- (t + a/t)/2 at doubling precision.
        Int t = static_cast<long>(r0);
        int cur = 1;
        while (cur < n) {
            cur = std::min(2 * cur, n);
            Int modulus = int_pow(p, static_cast<unsigned long>(cur));
            Int inv2 = invert(Int(2), modulus);
            t = mod_pos((t + a.unit() * invert(t, modulus)) * inv2, modulus);
        }
        return PAdic::from_unit(p, v / 2, t, n);
    }
    // p = 2: lift bit by bit from the root 1 of x^2 = u (mod 8); the branch
    // representative stays = 1 (mod 4) because only bits >= 2 are touched.
    Int r = 1;
    for (int k = 3; k < n; ++k) {
        Int modulus = int_pow(2, static_cast<unsigned long>(k + 1));
        if (mod_pos(r * r - a.unit(), modulus) != 0) r += int_pow(2, static_cast<unsigned long>(k - 1));
    }
    return PAdic::from_unit(2, v / 2, r, n - 1);
}

Int teichmuller(long long p, long long residue, int prec) {
    residue = ((residue % p) + p) % p;
    if (residue == 0) fail(Errc::precondition_violated, "Teichmuller lift of 0");
    Int modulus = int_pow(p, static_cast<unsigned long>(prec));
    Int x = static_cast<long>(residue);
    Int pz = static_cast<long>(p);
    for (;;) {
        Int next = powm(x, pz, modulus);
        if (next == x) return x;
        x = next;
    }
}

PAdic sqrt_series(const PAdic& a, const BranchTable& table) {
    const long long p = a.prime();
    if (p == 2)
        fail(Errc::unsupported_prime, "the odd-p series expansion does not cover p = 2");
    if (table.p != p) fail(Errc::spec_mismatch, "branch table for a different prime");
    if (a.is_zero())
        return a.is_exact_zero() ? PAdic::zero(p) : PAdic::zero(p, (a.abs_prec() + 1) / 2);
    if (!is_square(a)) fail(Errc::not_a_square, a.to_string() + " is not a square");
    const long long v = a.valuation();
    const int n = a.rel_prec();
    const int work = n + (2 * n) / static_cast<int>(p - 1) + 4;

    // Locate the ball: the unit part lies in A_2k where g^2k matches its
    // leading digit; the series is centered at the Teichmuller point e^2k.
    long long lead = mod_pos(a.unit(), to_z(p)).get_si();
    long long half = (p - 1) / 2;
    long long k = 0;
    Int prime = static_cast<long>(p);
    Int g2 = mod_pos(to_z(table.g) * to_z(table.g), prime);
    Int acc = 1;
    for (long long i = 1; i <= half; ++i) {
        acc = mod_pos(acc * g2, prime);
        if (acc.get_si() == lead) {
            k = i;
            break;
        }
    }
    if (k == 0) fail(Errc::not_a_square, "leading digit is not a quadratic residue");

    Int modulus = int_pow(p, static_cast<unsigned long>(work));
    Int eps = teichmuller(p, table.g, work);
    Int ek = powm(eps, Int(static_cast<long>(k)), modulus);
    Int e2k = mod_pos(ek * ek, modulus);

    // sqrt(1+z) = sum binom(1/2, j) z^j with z = (u - e^2k)/e^2k, v_p(z) >= 1.
    Int znum = a.unit() - e2k;
    Rat z(znum, e2k);
    z.canonicalize();
    Rat sum(1);
    if (z != 0) {
        long long vz = rat_valuation(z, p);
        Rat coeff(1);
        Rat zpow(1);
        long long vp_factorial = 0;
        for (long long j = 1;; ++j) {
            long long jj = j;
            while (jj % p == 0) {
                ++vp_factorial;
                jj /= p;
            }
            if (j * vz - vp_factorial > n + 2) break;
            // binom(1/2, j) = binom(1/2, j-1) * (1/2 - (j-1)) / j
            Rat step(Int(3 - 2 * static_cast<long>(j)), Int(2 * static_cast<long>(j)));
            step.canonicalize();
            coeff *= step;
            zpow *= z;
            sum += coeff * zpow;
        }
    }
    Rat unit_value = Rat(ek) * sum;
    unit_value.canonicalize();
    PAdic u = PAdic::from_rational(p, unit_value, n);
    return PAdic::from_unit(p, v / 2 + u.valuation(), u.unit(), u.rel_prec());
}

// --- residue models ---

std::vector<long long> ball_residues(const Ball& ball, int level) {
    const long long p = ball.center.prime();
    if (ball.radius_exp < 0) fail(Errc::scale_error, "ball is not contained in Z_p");
    if (!ball.center.is_zero() && ball.center.valuation() < 0)
        fail(Errc::scale_error, "ball center is not a p-adic integer");
    if (ball.radius_exp > level)
        fail(Errc::precondition_violated, "radius exponent exceeds the residue level");
    long long pl = pow_ll(p, level);
    long long step = pow_ll(p, ball.radius_exp);
    long long count = pl / step;
    long long c = ball.center.residue(level).get_si();
    std::vector<long long> out;
    out.reserve(static_cast<size_t>(count));
    for (long long t = 0; t < count; ++t) out.push_back((c + step * t) % pl);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::pair<long long, long long>> ball_rect_residues(const BallRect& rect, int level) {
    std::vector<long long> first = ball_residues(rect.first, level);
    std::vector<long long> second = ball_residues(rect.second, level);
    std::vector<std::pair<long long, long long>> out;
    out.reserve(first.size() * second.size());
    for (long long a : first)
        for (long long b : second) out.emplace_back(a, b);
    return out;
}

bool lemma4_check(const PAdic& x0, const PAdic& y0, long long k, int level) {
    require_same_prime(x0, y0);
    const long long p = x0.prime();
    PAdic d = psub(x0, y0);
    if (d.is_zero()) fail(Errc::precondition_violated, "x0 = y0 up to precision");
    long long l = d.valuation();
    if (l < 0) fail(Errc::scale_error, "points are not p-adic integers");
    if (k < l + 1) fail(Errc::precondition_violated, "k must be >= l+1");
    if (level < k + l + 1) fail(Errc::precondition_violated, "level must be >= k+l+1");
    const long long pl = pow_ll(p, level);
    const long long cx = x0.residue(level).get_si();
    const long long cy = y0.residue(level).get_si();
    const long long step = pow_ll(p, k);
    const long long count = pl / step;

    std::set<std::pair<long long, long long>> image;
    for (long long i = 0; i < count; ++i) {
        long long x = (cx + step * i) % pl;
        for (long long j = 0; j < count; ++j) {
            long long y = (cy + step * j) % pl;
            long long s = (x + y) % pl;
            long long diff = ((x - y) % pl + pl) % pl;
            image.emplace(s, (diff * diff) % pl);
        }
    }

    long long sc = (cx + cy) % pl;
    long long dc = ((cx - cy) % pl + pl) % pl;
    dc = (dc * dc) % pl;
    BallRect target{{PAdic::from_integer(p, to_z(sc), level + 1), k},
                    {PAdic::from_integer(p, to_z(dc), level + 1), k + l}};
    auto rect_pairs = ball_rect_residues(target, level);
    std::set<std::pair<long long, long long>> rect(rect_pairs.begin(), rect_pairs.end());
    return image == rect;
}

bool eq12_check(long long p, long long c, long long m, int level) {
    if (p == 2) fail(Errc::precondition_violated, "odd p required");
    if (m < 0) fail(Errc::precondition_violated, "m must be >= 0");
    if (c % p == 0) fail(Errc::precondition_violated, "c must be a unit");
    const long long pl = pow_ll(p, level);
    c = ((c % pl) + pl) % pl;
    const long long c2 = (2 * c) % pl;
    const long long pm = m >= level ? 0 : pow_ll(p, m);
    std::set<long long> hit;
    for (long long t = 0; t < pl; ++t) {
        long long lin = (c2 * t) % pl;
        long long quad = (pm * ((t * t) % pl)) % pl;
        hit.insert((lin + quad) % pl);
    }
    return static_cast<long long>(hit.size()) == pl;
}

std::pair<std::pair<PAdic, PAdic>, std::pair<PAdic, PAdic>>
s_maps(const PAdic& u, const PAdic& v, const BranchTable& table) {
    require_same_prime(u, v);
    if (u.prime() == 2) fail(Errc::precondition_violated, "odd p required");
    PAdic root = sqrt_hensel(v, table);
    int guard = 8;
    if (!u.is_zero()) guard = std::max(guard, u.rel_prec() + 4);
    if (!root.is_zero()) guard = std::max(guard, root.rel_prec() + 4);
    PAdic two = PAdic::from_integer(u.prime(), 2, guard);
    PAdic x = pdiv(padd(u, root), two);
    PAdic y = pdiv(psub(u, root), two);
    return {{x, y}, {y, x}};
}

Lemma5Result lemma5_check(const PAdic& u0, const PAdic& v0, long long k, int level) {
    require_same_prime(u0, v0);
    const long long p = u0.prime();
    if (p == 2) fail(Errc::precondition_violated, "odd p required");
    BranchTable table = branch_table(p);
    PAdic s0 = sqrt_hensel(v0, table); // NotASquare for non-squares
    if (s0.is_zero()) fail(Errc::precondition_violated, "v0 must be nonzero");
    const long long l = s0.valuation();
    if (l < 0 || (!u0.is_zero() && u0.valuation() < 0))
        fail(Errc::scale_error, "E_k is not contained in Z_p x Z_p");
    if (k < l + 1) fail(Errc::precondition_violated, "k must be >= l+1");
    if (k + l > level) fail(Errc::precondition_violated, "level too small to resolve E_k");

    const int vlevel = static_cast<int>(level + l); // v-axis refined so s(v) resolves at `level`
    const long long pl = pow_ll(p, level);
    const long long plv = pow_ll(p, vlevel);
    const long long inv2l = invert(Int(2), int_pow(p, static_cast<unsigned long>(level))).get_si();

    const long long cu = u0.residue(level).get_si();
    const long long cv = v0.residue(vlevel).get_si();
    const long long ustep = pow_ll(p, k);
    const long long vstep = pow_ll(p, k + l);
    const long long ucount = pl / ustep;
    const long long vcount = plv / vstep;

    // Square roots per v-representative; each determines s(v) mod p^level.
    std::vector<long long> roots;
    roots.reserve(static_cast<size_t>(vcount));
    for (long long j = 0; j < vcount; ++j) {
        long long vz = (cv + vstep * j) % plv;
        PAdic pv = PAdic::from_integer(p, static_cast<long>(vz), static_cast<int>(level + 2));
        roots.push_back(sqrt_hensel(pv, table).residue(level).get_si());
    }

    std::set<std::pair<long long, long long>> s1, s2;
    for (long long i = 0; i < ucount; ++i) {
        long long uz = (cu + ustep * i) % pl;
        for (long long root : roots) {
            long long x = ((uz + root) % pl) * inv2l % pl;
            long long y = (((uz - root) % pl + pl) % pl) * inv2l % pl;
            s1.emplace(x, y);
            s2.emplace(y, x);
        }
    }

    bool disjoint = true;
    for (const auto& pt : s1) {
        if (s2.count(pt)) {
            disjoint = false;
            break;
        }
    }

    // Counting form of the change-of-variables identity: S_1(E_k) is the
    // product ball (x0,y0) + (p^k Z_p)^2, whose residue count is p^l times
    // that of E_k at the same level.
    const long long s0res = s0.residue(level).get_si();
    const long long x0res = ((cu + s0res) % pl) * inv2l % pl;
    const long long y0res = (((cu - s0res) % pl + pl) % pl) * inv2l % pl;
    const long long ek_count = ucount * (pl / vstep);
    bool jacobian_ok = static_cast<long long>(s1.size()) == ek_count * pow_ll(p, l);
    for (const auto& [x, y] : s1) {
        if ((((x - x0res) % pl + pl) % pl) % ustep != 0 ||
            (((y - y0res) % pl + pl) % pl) % ustep != 0) {
            jacobian_ok = false;
            break;
        }
    }
    return {disjoint, jacobian_ok};
}

} // namespace charfield
