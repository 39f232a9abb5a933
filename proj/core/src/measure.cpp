#include "charfield/measure.hpp"

#include <algorithm>
#include <sstream>

namespace charfield {

namespace {

void check_pmf(const RingSpec& carrier, const std::map<Elt, Rat>& pmf) {
    if (pmf.empty()) fail(Errc::bad_config, "empty pmf");
    Rat total(0);
    for (const auto& [x, m] : pmf) {
        if (!(x.spec() == carrier)) fail(Errc::spec_mismatch, "pmf key from another carrier");
        if (m <= 0) fail(Errc::bad_config, "pmf mass must be strictly positive");
        total += m;
    }
    if (total != 1) fail(Errc::bad_config, "pmf masses must sum to 1, got " + rat_to_string(total));
}

} // namespace

Dist::Dist(RingSpec carrier, std::map<Elt, Rat> pmf)
    : carrier_(std::move(carrier)), pmf_(std::move(pmf)) {
    check_pmf(carrier_, pmf_);
}

Dist Dist::degenerate(const Elt& x) {
    std::map<Elt, Rat> pmf;
    pmf.emplace(x, Rat(1));
    return Dist(x.spec(), std::move(pmf));
}

Dist Dist::haar(const SubgroupSpec& subgroup) {
    std::map<Elt, Rat> pmf;
    Rat m(Int(1), to_z(subgroup.cardinality()));
    m.canonicalize();
    for (const Elt& x : subgroup.elements) pmf.emplace(x, m);
    return Dist(subgroup.ambient, std::move(pmf));
}

Dist Dist::from_weights(const RingSpec& carrier, const std::map<Elt, Rat>& weights) {
    Rat total(0);
    for (const auto& [x, w] : weights) {
        if (w < 0) fail(Errc::bad_config, "negative weight");
        total += w;
    }
    if (total <= 0) fail(Errc::bad_config, "weights must have positive sum");
    std::map<Elt, Rat> pmf;
    for (const auto& [x, w] : weights) {
        if (w == 0) continue;
        Rat m = w / total;
        m.canonicalize();
        pmf.emplace(x, m);
    }
    return Dist(carrier, std::move(pmf));
}

Rat Dist::mass(const Elt& x) const {
    auto it = pmf_.find(x);
    return it == pmf_.end() ? Rat(0) : it->second;
}

std::vector<Elt> Dist::support() const {
    std::vector<Elt> out;
    out.reserve(pmf_.size());
    for (const auto& [x, m] : pmf_) out.push_back(x);
    return out;
}

Dist Dist::shifted(const Elt& x) const {
    std::map<Elt, Rat> pmf;
    for (const auto& [y, m] : pmf_) pmf.emplace(add(y, x), m);
    return Dist(carrier_, std::move(pmf));
}

std::string Dist::to_string() const {
    std::ostringstream os;
    bool first = true;
    for (const auto& [x, m] : pmf_) {
        if (!first) os << ",";
        first = false;
        os << elt_to_string(x) << ":" << rat_to_string(m);
    }
    return os.str();
}

Dist Dist::parse(const RingSpec& carrier, const std::string& text) {
    std::map<Elt, Rat> pmf;
    std::stringstream ss(text);
    std::string entry;
    while (std::getline(ss, entry, ',')) {
        auto colon = entry.find(':');
        if (colon == std::string::npos)
            fail(Errc::bad_config, "bad pmf entry '" + entry + "' (want elem:num/den)");
        Elt x = elt_from_string(carrier, entry.substr(0, colon));
        Rat m = rat_from_string(entry.substr(colon + 1));
        auto [it, inserted] = pmf.emplace(x, m);
        if (!inserted) fail(Errc::bad_config, "duplicate pmf entry for " + elt_to_string(x));
    }
    return Dist(carrier, std::move(pmf));
}

// --- JointDist ---

JointDist::JointDist(RingSpec carrier, std::map<std::pair<Elt, Elt>, Rat> pmf)
    : carrier_(std::move(carrier)), pmf_(std::move(pmf)) {
    Rat total(0);
    for (const auto& [uv, m] : pmf_) {
        if (!(uv.first.spec() == carrier_) || !(uv.second.spec() == carrier_))
            fail(Errc::spec_mismatch, "joint pmf key from another carrier");
        if (m <= 0) fail(Errc::bad_config, "joint mass must be strictly positive");
        total += m;
    }
    if (total != 1) fail(Errc::bad_config, "joint masses must sum to 1");
}

Rat JointDist::mass(const Elt& u, const Elt& v) const {
    auto it = pmf_.find({u, v});
    return it == pmf_.end() ? Rat(0) : it->second;
}

JointDist push_T(const Dist& mu, const Dist& nu) {
    if (!(mu.carrier() == nu.carrier()))
        fail(Errc::spec_mismatch, "pushforward factors live on different carriers");
    std::map<std::pair<Elt, Elt>, Rat> joint;
    for (const auto& [x, mx] : mu.pmf()) {
        for (const auto& [y, my] : nu.pmf()) {
            Elt s = add(x, y);
            Elt d = sub(x, y);
            joint[{s, mul(d, d)}] += mx * my;
        }
    }
    for (auto& [uv, m] : joint) m.canonicalize();
    return JointDist(mu.carrier(), std::move(joint));
}

JointDist closed_form_SD(const Dist& mu) {
    const RingSpec& spec = mu.carrier();
    if (!spec.is_finite()) fail(Errc::infinite_carrier, "closed form needs a finite carrier");
    if (characteristic(spec) == 2) fail(Errc::char_two, "closed form needs odd characteristic");
    std::vector<Elt> carrier = enumerate(spec);
    std::map<std::pair<Elt, Elt>, Rat> joint;
    Elt zero = zero_of(spec);
    for (const Elt& u : carrier) {
        Rat m = mu.mass(halve(u));
        if (m == 0) continue;
        joint[{u, zero}] = m * m;
    }
    // One root t per square class v = t^2; both roots give the same product.
    std::vector<Elt> squares = squares_of_set(spec, carrier);
    for (const Elt& v : squares) {
        if (v == zero) continue;
        Elt root = zero;
        for (const Elt& t : carrier) {
            if (mul(t, t) == v) {
                root = t;
                break;
            }
        }
        for (const Elt& u : carrier) {
            Rat a = mu.mass(halve(add(u, root)));
            if (a == 0) continue;
            Rat b = mu.mass(halve(sub(u, root)));
            if (b == 0) continue;
            joint[{u, v}] = 2 * a * b;
        }
    }
    for (auto& [uv, m] : joint) m.canonicalize();
    return JointDist(spec, std::move(joint));
}

std::pair<Dist, Dist> marginals(const JointDist& joint) {
    std::map<Elt, Rat> s, d;
    for (const auto& [uv, m] : joint.pmf()) {
        s[uv.first] += m;
        d[uv.second] += m;
    }
    for (auto& [x, m] : s) m.canonicalize();
    for (auto& [x, m] : d) m.canonicalize();
    return {Dist(joint.carrier(), std::move(s)), Dist(joint.carrier(), std::move(d))};
}

JointDist product_joint(const Dist& a, const Dist& b) {
    if (!(a.carrier() == b.carrier())) fail(Errc::spec_mismatch, "product of different carriers");
    std::map<std::pair<Elt, Elt>, Rat> joint;
    for (const auto& [u, mu] : a.pmf())
        for (const auto& [v, mv] : b.pmf()) {
            Rat m = mu * mv;
            m.canonicalize();
            joint[{u, v}] = m;
        }
    return JointDist(a.carrier(), std::move(joint));
}

IndependenceVerdict is_independent(const JointDist& joint) {
    auto [s, d] = marginals(joint);
    for (const auto& [u, su] : s.pmf()) {
        for (const auto& [v, dv] : d.pmf()) {
            Rat expected = su * dv;
            expected.canonicalize();
            Rat actual = joint.mass(u, v);
            if (actual != expected) {
                IndependenceVerdict verdict;
                verdict.independent = false;
                verdict.witness = std::make_pair(u, v);
                verdict.joint_mass = actual;
                verdict.product_mass = expected;
                return verdict;
            }
        }
    }
    IndependenceVerdict verdict;
    verdict.independent = true;
    return verdict;
}

Classification classify(const Dist& mu) {
    if (!mu.carrier().is_finite()) {
        // On Q only point masses can be idempotent.
        Classification c;
        c.cls = mu.pmf().size() == 1 ? DistClass::degenerate : DistClass::other;
        return c;
    }
    if (mu.pmf().size() == 1) {
        Classification c;
        c.cls = DistClass::degenerate;
        return c;
    }
    auto coset = coset_test(mu.carrier(), mu.support());
    if (!coset) {
        Classification c;
        c.cls = DistClass::other;
        return c;
    }
    Rat uniform(Int(1), to_z(coset->first.cardinality()));
    uniform.canonicalize();
    for (const auto& [x, m] : mu.pmf()) {
        if (m != uniform) {
            Classification c;
            c.cls = DistClass::other;
            return c;
        }
    }
    Classification c;
    c.cls = DistClass::haar_shift;
    c.subgroup = coset->first;
    c.shift = coset->second;
    return c;
}

// --- StepDensity ---

StepDensity::StepDensity(long long p, int level, std::map<long long, Rat> values)
    : p_(p), level_(level) {
    if (!is_prime(p)) fail(Errc::bad_config, "p must be prime");
    if (level < 1) fail(Errc::bad_config, "level must be >= 1");
    long long pl = pow_ll(p, level);
    Rat total(0);
    for (const auto& [r, v] : values) {
        if (r < 0 || r >= pl) fail(Errc::bad_config, "residue out of range");
        if (v < 0) fail(Errc::bad_config, "density values must be nonnegative");
        if (v == 0) continue;
        total += v;
        values_.emplace(r, v);
    }
    total *= rat_pow(p, -level);
    total.canonicalize();
    if (total != 1)
        fail(Errc::bad_config, "density must have Haar mass 1, got " + rat_to_string(total));
}

StepDensity StepDensity::haar_ball(long long p, int m, int level) {
    if (m < 0) fail(Errc::bad_config, "m must be >= 0");
    if (level < std::max(m, 1)) fail(Errc::bad_config, "level too coarse for p^m Z_p");
    long long pm = pow_ll(p, m);
    long long pl = pow_ll(p, level);
    Rat value = rat_pow(p, m);
    std::map<long long, Rat> values;
    for (long long r = 0; r < pl; r += pm) values.emplace(r, value);
    return StepDensity(p, level, std::move(values));
}

Rat StepDensity::value_at(long long residue) const {
    auto it = values_.find(residue);
    return it == values_.end() ? Rat(0) : it->second;
}

Rat StepDensity::value_at_rat(const Rat& x) const {
    if (x == 0) return value_at(0);
    if (rat_valuation(x, p_) < 0) return 0; // outside Z_p
    Int pl = to_z(pow_ll(p_, level_));
    Int den_inv;
    if (mpz_invert(den_inv.get_mpz_t(), x.get_den().get_mpz_t(), pl.get_mpz_t()) == 0)
        fail(Errc::scale_error, "denominator not a unit"); // unreachable given valuation >= 0
    Int residue = mod_pos(x.get_num() * den_inv, pl);
    return value_at(residue.get_si());
}

StepDensity StepDensity::at_level(int level) const {
    if (level == level_) return *this;
    std::map<long long, Rat> values;
    if (level > level_) {
        long long parent = pow_ll(p_, level_);
        long long children = pow_ll(p_, level - level_);
        for (const auto& [r, v] : values_)
            for (long long t = 0; t < children; ++t) values.emplace(r + parent * t, v);
    } else {
        long long coarse = pow_ll(p_, level);
        Rat scale = rat_pow(p_, -(level_ - level));
        for (const auto& [r, v] : values_) {
            Rat share = v * scale;
            share.canonicalize();
            values[r % coarse] += share;
        }
        for (auto& [r, v] : values) v.canonicalize();
    }
    return StepDensity(p_, level, std::move(values));
}

Dist StepDensity::to_dist() const {
    RingSpec carrier = RingSpec::modular_ring(p_, level_);
    Rat haar_mass = rat_pow(p_, -level_);
    std::map<Elt, Rat> pmf;
    for (const auto& [r, v] : values_) {
        Rat m = v * haar_mass;
        m.canonicalize();
        pmf.emplace(Elt(carrier, r), m);
    }
    return Dist(carrier, std::move(pmf));
}

std::string StepDensity::to_string() const {
    std::ostringstream os;
    bool first = true;
    for (const auto& [r, v] : values_) {
        if (!first) os << ",";
        first = false;
        os << r << ":" << rat_to_string(v);
    }
    return os.str();
}

nlohmann::json StepDensity::to_json() const {
    nlohmann::json j;
    j["p"] = p_;
    j["level"] = level_;
    nlohmann::json values;
    for (const auto& [r, v] : values_) values[std::to_string(r)] = rat_to_string(v);
    j["values"] = std::move(values);
    return j;
}

StepDensity StepDensity::from_json(const nlohmann::json& j) {
    if (!j.contains("p") || !j.contains("level") || !j.contains("values"))
        fail(Errc::bad_config, "density JSON needs p, level, values");
    std::map<long long, Rat> values;
    for (const auto& [key, value] : j.at("values").items())
        values.emplace(std::stoll(key), rat_from_string(value.get<std::string>()));
    return StepDensity(j.at("p").get<long long>(), j.at("level").get<int>(), std::move(values));
}

std::map<std::pair<long long, long long>, Rat> density_SD(const StepDensity& rho,
                                                          const BranchTable& table) {
    const long long p = rho.prime();
    if (p == 2)
        fail(Errc::unsupported_prime, "closed-form density needs odd p; use the residue test");
    if (table.p != p) fail(Errc::spec_mismatch, "branch table for a different prime");
    const int level = rho.level();
    const long long pl = pow_ll(p, level);
    const long long inv2 = [&] {
        Int i;
        mpz_invert(i.get_mpz_t(), Int(2).get_mpz_t(), to_z(pl).get_mpz_t());
        return i.get_si();
    }();

    std::map<std::pair<long long, long long>, Rat> out;
    for (long long v = 1; v < pl; ++v) {
        long long j = 0;
        long long unit = v;
        while (unit % p == 0) {
            unit /= p;
            ++j;
        }
        if (j % 2 != 0) continue; // odd valuation: not a square class
        PAdic value = PAdic::from_integer(p, to_z(v), level + 2);
        if (!is_square(value)) continue;
        long long root = sqrt_hensel(value, table).residue(level).get_si();
        Rat jacobian = rat_pow(p, j / 2); // |s(v)|_p^(-1)
        for (long long u = 0; u < pl; ++u) {
            Rat a = rho.value_at(((u + root) % pl) * inv2 % pl);
            if (a == 0) continue;
            Rat b = rho.value_at((((u - root) % pl + pl) % pl) * inv2 % pl);
            if (b == 0) continue;
            Rat m = 2 * a * b * jacobian;
            m.canonicalize();
            out[{u, v}] = m;
        }
    }
    return out;
}

IndependenceVerdict residue_SD_test(const StepDensity& rho, int level) {
    Dist model = rho.at_level(level).to_dist();
    return is_independent(push_T(model, model));
}

} // namespace charfield
