#include "charfield/ring.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace charfield {

namespace {

long long pow_checked(long long p, int e) {
    long long r = 1;
    for (int i = 0; i < e; ++i) {
        if (r > (1ll << 40) / p) fail(Errc::bad_config, "carrier too large");
        r *= p;
    }
    return r;
}

// --- polynomial helpers over F_p, coefficients low-degree first ---

using Poly = std::vector<long long>;

void poly_trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

Poly poly_mul(const Poly& a, const Poly& b, long long p) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j)
            r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    poly_trim(r);
    return r;
}

long long inv_mod(long long a, long long m) {
    long long t = 0, new_t = 1, r = m, new_r = ((a % m) + m) % m;
    while (new_r != 0) {
        long long q = r / new_r;
        t -= q * new_t;
        std::swap(t, new_t);
        r -= q * new_r;
        std::swap(r, new_r);
    }
    if (r != 1) fail(Errc::not_a_unit, "no inverse of " + std::to_string(a));
    return ((t % m) + m) % m;
}

// Remainder of a modulo the monic divisor d.
Poly poly_rem(Poly a, const Poly& d, long long p) {
    poly_trim(a);
    const size_t dn = d.size() - 1;
    while (a.size() > dn) {
        long long c = a.back();
        size_t shift = a.size() - 1 - dn;
        for (size_t i = 0; i < d.size(); ++i) {
            a[shift + i] = ((a[shift + i] - c * d[i]) % p + p) % p;
        }
        poly_trim(a);
    }
    return a;
}

bool poly_divides(const Poly& d, const Poly& a, long long p) {
    return poly_rem(a, d, p).empty();
}

Poly decode_poly(long long enc, long long p, int n) {
    Poly a(n, 0);
    for (int i = 0; i < n; ++i) {
        a[i] = enc % p;
        enc /= p;
    }
    return a;
}

long long encode_poly(const Poly& a, long long p, int n) {
    long long enc = 0;
    for (int i = n - 1; i >= 0; --i)
        enc = enc * p + (i < static_cast<int>(a.size()) ? a[i] : 0);
    return enc;
}

} // namespace

std::vector<long long> irreducible_modulus(long long p, int n) {
    if (!is_prime(p)) fail(Errc::bad_config, "p must be prime");
    if (n < 2) fail(Errc::bad_config, "degree must be >= 2");
    // Scan monic candidates t^n + c in ascending integer encoding of c and
    // trial-divide by every monic polynomial of degree 1..n/2.
    long long bound = pow_checked(p, n);
    for (long long enc = 0; enc < bound; ++enc) {
        Poly cand = decode_poly(enc, p, n);
        cand.resize(n + 1, 0);
        cand[n] = 1;
        bool reducible = false;
        for (int d = 1; !reducible && 2 * d <= n; ++d) {
            long long dbound = pow_checked(p, d);
            for (long long denc = 0; denc < dbound; ++denc) {
                Poly div = decode_poly(denc, p, d);
                div.resize(d + 1, 0);
                div[d] = 1;
                if (poly_divides(div, cand, p)) {
                    reducible = true;
                    break;
                }
            }
        }
        if (!reducible) return cand;
    }
    fail(Errc::bad_config, "no irreducible polynomial found"); // unreachable
}

// --- RingSpec ---

RingSpec RingSpec::prime_field(long long p) {
    if (!is_prime(p)) fail(Errc::bad_config, "p must be prime, got " + std::to_string(p));
    RingSpec s;
    s.kind_ = RingKind::prime_field;
    s.p_ = p;
    return s;
}

RingSpec RingSpec::extension_field(long long p, int n) {
    return extension_field(p, n, irreducible_modulus(p, n));
}

RingSpec RingSpec::extension_field(long long p, int n, std::vector<long long> modulus) {
    if (!is_prime(p)) fail(Errc::bad_config, "p must be prime");
    if (n < 2) fail(Errc::bad_config, "extension degree must be >= 2");
    if (static_cast<int>(modulus.size()) != n + 1 || modulus[n] != 1)
        fail(Errc::bad_config, "modulus must be monic of degree n");
    for (long long c : modulus)
        if (c < 0 || c >= p) fail(Errc::bad_config, "modulus coefficients must lie in [0,p)");
    // Reject reducible moduli by the same scan used to construct them.
    for (int d = 1; 2 * d <= n; ++d) {
        long long dbound = pow_checked(p, d);
        for (long long denc = 0; denc < dbound; ++denc) {
            Poly div = decode_poly(denc, p, d);
            div.resize(d + 1, 0);
            div[d] = 1;
            if (poly_divides(div, modulus, p)) fail(Errc::bad_config, "modulus is reducible");
        }
    }
    RingSpec s;
    s.kind_ = RingKind::extension_field;
    s.p_ = p;
    s.degree_ = n;
    s.modulus_ = std::move(modulus);
    return s;
}

RingSpec RingSpec::modular_ring(long long p, int level) {
    if (!is_prime(p)) fail(Errc::bad_config, "p must be prime");
    if (level < 1) fail(Errc::bad_config, "level must be >= 1");
    RingSpec s;
    s.kind_ = RingKind::modular_ring;
    s.p_ = p;
    s.level_ = level;
    return s;
}

RingSpec RingSpec::rational_field() { return RingSpec{}; }

long long RingSpec::size() const {
    switch (kind_) {
    case RingKind::prime_field: return p_;
    case RingKind::extension_field: return pow_checked(p_, degree_);
    case RingKind::modular_ring: return pow_checked(p_, level_);
    case RingKind::rational_field: fail(Errc::infinite_carrier, "Q has no finite size");
    }
    fail(Errc::bad_config, "bad kind");
}

std::string RingSpec::to_string() const {
    switch (kind_) {
    case RingKind::prime_field: return "fp:" + std::to_string(p_);
    case RingKind::extension_field:
        return "fpn:" + std::to_string(p_) + "," + std::to_string(degree_);
    case RingKind::modular_ring:
        return "zmod:" + std::to_string(p_) + "," + std::to_string(level_);
    case RingKind::rational_field: return "q";
    }
    return "?";
}

RingSpec RingSpec::parse(const std::string& text) {
    if (text == "q" || text == "Q") return rational_field();
    auto colon = text.find(':');
    if (colon == std::string::npos) fail(Errc::bad_config, "bad field spec '" + text + "'");
    std::string head = text.substr(0, colon);
    std::string tail = text.substr(colon + 1);
    auto parse_ll = [&](const std::string& s) -> long long {
        try {
            size_t pos = 0;
            long long v = std::stoll(s, &pos);
            if (pos != s.size()) throw std::invalid_argument(s);
            return v;
        } catch (const std::exception&) {
            fail(Errc::bad_config, "bad number '" + s + "' in field spec");
        }
    };
    if (head == "fp") return prime_field(parse_ll(tail));
    auto comma = tail.find(',');
    if (comma == std::string::npos) fail(Errc::bad_config, "bad field spec '" + text + "'");
    long long a = parse_ll(tail.substr(0, comma));
    long long b = parse_ll(tail.substr(comma + 1));
    if (head == "fpn") return extension_field(a, static_cast<int>(b));
    if (head == "zmod") return modular_ring(a, static_cast<int>(b));
    fail(Errc::bad_config, "unknown field kind '" + head + "'");
}

// --- Elt ---

Elt::Elt(RingSpec spec, long long canonical) : spec_(std::move(spec)), value_(canonical) {
    if (spec_.kind() == RingKind::rational_field) {
        value_ = Rat(static_cast<long>(canonical));
        return;
    }
    if (canonical < 0 || canonical >= spec_.size())
        fail(Errc::bad_config, "element " + std::to_string(canonical) +
                                   " is outside the canonical range of " + spec_.to_string());
}

Elt::Elt(RingSpec spec, Rat value) : spec_(std::move(spec)), value_(std::move(value)) {
    if (spec_.kind() != RingKind::rational_field)
        fail(Errc::spec_mismatch, "rational value on a finite carrier");
}

Elt zero_of(const RingSpec& spec) { return Elt(spec, 0); }
Elt one_of(const RingSpec& spec) { return Elt(spec, 1); }

Elt elt_of(const RingSpec& spec, long long value) {
    switch (spec.kind()) {
    case RingKind::prime_field: {
        long long p = spec.p();
        return Elt(spec, ((value % p) + p) % p);
    }
    case RingKind::modular_ring: {
        long long m = spec.size();
        return Elt(spec, ((value % m) + m) % m);
    }
    case RingKind::extension_field: {
        // Integers embed through the prime subfield.
        long long p = spec.p();
        return Elt(spec, ((value % p) + p) % p);
    }
    case RingKind::rational_field: return Elt(spec, Rat(static_cast<long>(value)));
    }
    fail(Errc::bad_config, "bad kind");
}

Elt elt_of(const RingSpec& spec, const Rat& value) {
    if (spec.kind() != RingKind::rational_field)
        fail(Errc::spec_mismatch, "rational value on a finite carrier");
    Rat q = value;
    q.canonicalize();
    return Elt(spec, q);
}

namespace {

void require_same_spec(const Elt& a, const Elt& b) {
    if (!(a.spec() == b.spec()))
        fail(Errc::spec_mismatch, "elements from different carriers");
}

Elt make_ext(const RingSpec& spec, const Poly& coeffs) {
    return Elt(spec, encode_poly(coeffs, spec.p(), spec.degree()));
}

Poly ext_coeffs(const Elt& a) {
    return decode_poly(a.zval(), a.spec().p(), a.spec().degree());
}

} // namespace

Elt add(const Elt& a, const Elt& b) {
    require_same_spec(a, b);
    const RingSpec& s = a.spec();
    switch (s.kind()) {
    case RingKind::prime_field:
    case RingKind::modular_ring: {
        long long m = s.size();
        return Elt(s, (a.zval() + b.zval()) % m);
    }
    case RingKind::extension_field: {
        Poly x = ext_coeffs(a), y = ext_coeffs(b);
        for (int i = 0; i < s.degree(); ++i) x[i] = (x[i] + y[i]) % s.p();
        return make_ext(s, x);
    }
    case RingKind::rational_field: return Elt(s, Rat(a.qval() + b.qval()));
    }
    fail(Errc::bad_config, "bad kind");
}

Elt neg(const Elt& a) {
    const RingSpec& s = a.spec();
    switch (s.kind()) {
    case RingKind::prime_field:
    case RingKind::modular_ring: {
        long long m = s.size();
        return Elt(s, (m - a.zval()) % m);
    }
    case RingKind::extension_field: {
        Poly x = ext_coeffs(a);
        for (auto& c : x) c = (s.p() - c) % s.p();
        return make_ext(s, x);
    }
    case RingKind::rational_field: return Elt(s, Rat(-a.qval()));
    }
    fail(Errc::bad_config, "bad kind");
}

Elt sub(const Elt& a, const Elt& b) { return add(a, neg(b)); }

Elt mul(const Elt& a, const Elt& b) {
    require_same_spec(a, b);
    const RingSpec& s = a.spec();
    switch (s.kind()) {
    case RingKind::prime_field:
    case RingKind::modular_ring: {
        long long m = s.size();
        return Elt(s, (a.zval() * b.zval()) % m);
    }
    case RingKind::extension_field: {
        Poly prod = poly_mul(ext_coeffs(a), ext_coeffs(b), s.p());
        Poly red = poly_rem(std::move(prod), s.modulus(), s.p());
        red.resize(s.degree(), 0);
        return make_ext(s, red);
    }
    case RingKind::rational_field: return Elt(s, Rat(a.qval() * b.qval()));
    }
    fail(Errc::bad_config, "bad kind");
}

Elt inv(const Elt& a) {
    const RingSpec& s = a.spec();
    switch (s.kind()) {
    case RingKind::prime_field: {
        if (a.zval() == 0) fail(Errc::not_a_unit, "inverse of zero");
        return Elt(s, inv_mod(a.zval(), s.p()));
    }
    case RingKind::modular_ring: {
        if (a.zval() % s.p() == 0)
            fail(Errc::not_a_unit, std::to_string(a.zval()) + " is not a unit in " + s.to_string());
        return Elt(s, inv_mod(a.zval(), s.size()));
    }
    case RingKind::extension_field: {
        if (a.zval() == 0) fail(Errc::not_a_unit, "inverse of zero");
        // a^(q-2) in the multiplicative group of order q-1.
        long long e = s.size() - 2;
        Elt result = one_of(s);
        Elt base = a;
        while (e > 0) {
            if (e & 1) result = mul(result, base);
            base = mul(base, base);
            e >>= 1;
        }
        return result;
    }
    case RingKind::rational_field: {
        if (a.qval() == 0) fail(Errc::not_a_unit, "inverse of zero");
        return Elt(s, Rat(1 / a.qval()));
    }
    }
    fail(Errc::bad_config, "bad kind");
}

Elt halve(const Elt& a) {
    const RingSpec& s = a.spec();
    if (characteristic(s) == 2) fail(Errc::char_two, "no unique halving in characteristic 2");
    switch (s.kind()) {
    case RingKind::prime_field:
    case RingKind::modular_ring: {
        long long m = s.size();
        long long inv2 = inv_mod(2, m); // p odd, so 2 is a unit mod p^N
        return Elt(s, (a.zval() * inv2) % m);
    }
    case RingKind::extension_field: {
        long long inv2 = inv_mod(2, s.p());
        Poly x = ext_coeffs(a);
        for (auto& c : x) c = (c * inv2) % s.p();
        return make_ext(s, x);
    }
    case RingKind::rational_field: return Elt(s, Rat(a.qval() / 2));
    }
    fail(Errc::bad_config, "bad kind");
}

long long characteristic(const RingSpec& spec) {
    return spec.kind() == RingKind::rational_field ? 0 : spec.p();
}

std::vector<Elt> enumerate(const RingSpec& spec) {
    if (!spec.is_finite()) fail(Errc::infinite_carrier, "cannot enumerate Q");
    long long n = spec.size();
    std::vector<Elt> out;
    out.reserve(static_cast<size_t>(n));
    for (long long i = 0; i < n; ++i) out.emplace_back(spec, i);
    return out;
}

namespace {

SubgroupSpec make_subgroup(const RingSpec& spec, std::vector<Elt> generators,
                           const std::set<Elt>& elements) {
    SubgroupSpec k{spec, std::move(generators), {}};
    k.elements.assign(elements.begin(), elements.end());
    return k;
}

std::set<Elt> closure_set(const RingSpec& spec, const std::vector<Elt>& generators) {
    std::set<Elt> elems{zero_of(spec)};
    std::vector<Elt> frontier(elems.begin(), elems.end());
    for (const Elt& g : generators) {
        if (!(g.spec() == spec)) fail(Errc::spec_mismatch, "generator from another carrier");
    }
    // Closure under addition of generators and negation; the carrier is
    // finite so this terminates.
    std::vector<Elt> work(generators);
    for (const Elt& g : generators) work.push_back(neg(g));
    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<Elt> snapshot(elems.begin(), elems.end());
        for (const Elt& x : snapshot) {
            for (const Elt& g : work) {
                Elt y = add(x, g);
                if (elems.insert(y).second) grew = true;
            }
        }
    }
    return elems;
}

} // namespace

SubgroupSpec additive_closure(const RingSpec& spec, const std::vector<Elt>& generators) {
    if (!spec.is_finite()) fail(Errc::infinite_carrier, "additive closure on Q");
    return make_subgroup(spec, generators, closure_set(spec, generators));
}

std::optional<std::pair<SubgroupSpec, Elt>> coset_test(const RingSpec& spec,
                                                       const std::vector<Elt>& s) {
    if (!spec.is_finite()) fail(Errc::infinite_carrier, "coset test on Q");
    if (s.empty()) fail(Errc::empty_set, "coset test of the empty set");
    std::set<Elt> sset(s.begin(), s.end());
    // Canonical encodings make sorted order the enumeration order, so the
    // shift is simply the smallest member.
    Elt shift = *sset.begin();
    std::set<Elt> k;
    for (const Elt& x : sset) k.insert(sub(x, shift));
    for (const Elt& x : k) {
        if (k.find(neg(x)) == k.end()) return std::nullopt;
        for (const Elt& y : k) {
            if (k.find(add(x, y)) == k.end()) return std::nullopt;
        }
    }
    std::vector<Elt> gens(k.begin(), k.end());
    return std::make_pair(make_subgroup(spec, gens, k), shift);
}

std::vector<Elt> squares_of_set(const RingSpec& spec, const std::vector<Elt>& a) {
    std::set<Elt> out;
    for (const Elt& t : a) {
        if (!(t.spec() == spec)) fail(Errc::spec_mismatch, "element from another carrier");
        out.insert(mul(t, t));
    }
    return {out.begin(), out.end()};
}

std::vector<SubgroupSpec> additive_subgroups(const RingSpec& spec) {
    std::vector<Elt> carrier = enumerate(spec);
    std::set<std::vector<Elt>> seen;
    std::vector<SubgroupSpec> out;
    std::vector<SubgroupSpec> queue{additive_closure(spec, {})};
    seen.insert(queue.front().elements);
    while (!queue.empty()) {
        SubgroupSpec sg = std::move(queue.back());
        queue.pop_back();
        for (const Elt& x : carrier) {
            if (std::binary_search(sg.elements.begin(), sg.elements.end(), x)) continue;
            std::vector<Elt> gens = sg.elements;
            gens.push_back(x);
            SubgroupSpec bigger = additive_closure(spec, gens);
            if (seen.insert(bigger.elements).second) queue.push_back(bigger);
        }
        out.push_back(std::move(sg));
    }
    std::sort(out.begin(), out.end(), [](const SubgroupSpec& a, const SubgroupSpec& b) {
        if (a.elements.size() != b.elements.size()) return a.elements.size() < b.elements.size();
        return a.elements < b.elements;
    });
    return out;
}

// --- textual encodings ---

std::string elt_to_string(const Elt& a) {
    if (a.spec().kind() == RingKind::rational_field) return rat_to_string(a.qval());
    return std::to_string(a.zval());
}

namespace {

// "a0+a1*t+a2*t^2" (terms may omit the coefficient or the power).
long long parse_poly_form(const RingSpec& spec, const std::string& text) {
    Poly coeffs(spec.degree(), 0);
    std::stringstream ss(text);
    std::string term;
    while (std::getline(ss, term, '+')) {
        if (term.empty()) fail(Errc::bad_config, "bad element '" + text + "'");
        long long c = 1;
        int power = 0;
        auto tpos = term.find('t');
        if (tpos == std::string::npos) {
            c = std::stoll(term);
        } else {
            std::string coef = term.substr(0, tpos);
            if (!coef.empty() && coef.back() == '*') coef.pop_back();
            if (!coef.empty()) c = std::stoll(coef);
            std::string rest = term.substr(tpos + 1);
            power = 1;
            if (!rest.empty()) {
                if (rest[0] != '^') fail(Errc::bad_config, "bad element '" + text + "'");
                power = static_cast<int>(std::stoll(rest.substr(1)));
            }
        }
        if (power < 0 || power >= spec.degree())
            fail(Errc::bad_config, "term degree out of range in '" + text + "'");
        long long p = spec.p();
        coeffs[power] = (coeffs[power] + (c % p) + p) % p;
    }
    return encode_poly(coeffs, spec.p(), spec.degree());
}

} // namespace

Elt elt_from_string(const RingSpec& spec, const std::string& text) {
    if (text.empty()) fail(Errc::bad_config, "empty element literal");
    try {
        switch (spec.kind()) {
        case RingKind::prime_field:
        case RingKind::modular_ring: return elt_of(spec, std::stoll(text));
        case RingKind::extension_field: {
            if (text.find('t') != std::string::npos) return Elt(spec, parse_poly_form(spec, text));
            long long enc = std::stoll(text);
            long long q = spec.size();
            return Elt(spec, ((enc % q) + q) % q);
        }
        case RingKind::rational_field: return Elt(spec, rat_from_string(text));
        }
    } catch (const Error&) {
        throw;
    } catch (const std::exception&) {
        fail(Errc::bad_config, "bad element literal '" + text + "'");
    }
    fail(Errc::bad_config, "bad kind");
}

} // namespace charfield
