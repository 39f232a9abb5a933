#include "charfield/rational.hpp"

#include "charfield/errors.hpp"

namespace charfield {

const char* errc_name(Errc c) {
    switch (c) {
    case Errc::not_a_unit: return "NotAUnit";
    case Errc::spec_mismatch: return "SpecMismatch";
    case Errc::char_two: return "CharTwo";
    case Errc::infinite_carrier: return "InfiniteCarrier";
    case Errc::empty_set: return "EmptySet";
    case Errc::division_by_zero: return "DivisionByZero";
    case Errc::precision_exhausted: return "PrecisionExhausted";
    case Errc::insufficient_precision: return "InsufficientPrecision";
    case Errc::not_a_square: return "NotASquare";
    case Errc::unsupported_prime: return "UnsupportedPrime";
    case Errc::scale_error: return "ScaleError";
    case Errc::precondition_violated: return "PreconditionViolated";
    case Errc::not_a_subgroup: return "NotASubgroup";
    case Errc::zero_value: return "ZeroValue";
    case Errc::bad_config: return "BadConfig";
    case Errc::io_error: return "IoError";
    }
    return "Error";
}

std::string rat_to_string(const Rat& q) {
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rat rat_from_string(const std::string& s) {
    if (s.empty()) fail(Errc::bad_config, "empty rational literal");
    Rat q;
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) {
            q = Rat(Int(s));
        } else {
            Int num(s.substr(0, slash));
            Int den(s.substr(slash + 1));
            if (den == 0) fail(Errc::bad_config, "zero denominator in '" + s + "'");
            q = Rat(num, den);
        }
    } catch (const std::invalid_argument&) {
        fail(Errc::bad_config, "bad rational literal '" + s + "'");
    }
    q.canonicalize();
    return q;
}

Rat rat_pow(long long base, long long exp) {
    Int b = static_cast<long>(base);
    Int num = 1;
    mpz_pow_ui(num.get_mpz_t(), b.get_mpz_t(), static_cast<unsigned long>(exp < 0 ? -exp : exp));
    Rat q = exp >= 0 ? Rat(num) : Rat(Int(1), num);
    q.canonicalize();
    return q;
}

Int mod_pos(const Int& x, const Int& m) {
    Int r;
    mpz_mod(r.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
    return r;
}

Int int_pow(long long base, unsigned long exp) {
    Int b = static_cast<long>(base);
    Int r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), exp);
    return r;
}

long long int_valuation(const Int& x, long long p) {
    if (x == 0) fail(Errc::precondition_violated, "valuation of zero");
    Int v = abs(x);
    Int prime = static_cast<long>(p);
    long long count = 0;
    Int q, r;
    for (;;) {
        mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), v.get_mpz_t(), prime.get_mpz_t());
        if (r != 0) break;
        v = q;
        ++count;
    }
    return count;
}

long long rat_valuation(const Rat& q, long long p) {
    if (q == 0) fail(Errc::precondition_violated, "valuation of zero");
    return int_valuation(q.get_num(), p) - int_valuation(q.get_den(), p);
}

bool is_prime(long long n) {
    if (n < 2) return false;
    for (long long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

} // namespace charfield
