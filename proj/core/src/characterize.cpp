#include "charfield/characterize.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace charfield {

namespace {

nlohmann::json independence_witness_json(const IndependenceVerdict& v) {
    nlohmann::json j;
    j["u"] = elt_to_string(v.witness->first);
    j["v"] = elt_to_string(v.witness->second);
    j["joint"] = rat_to_string(v.joint_mass);
    j["product"] = rat_to_string(v.product_mass);
    return j;
}

Rat value_of(const std::map<Elt, Rat>& f, const Elt& x) {
    auto it = f.find(x);
    return it == f.end() ? Rat(0) : it->second;
}

FeqVerdict feq_fail(const Elt& u, const Elt& v, Rat lhs, Rat rhs) {
    FeqVerdict out;
    out.pass = false;
    out.witness = std::make_pair(u, v);
    out.lhs = std::move(lhs);
    out.rhs = std::move(rhs);
    return out;
}

// One functional-equation evaluation, exact.
bool feq_holds_at(const std::map<Elt, Rat>& f, const Elt& u, const Elt& v, const Rat& f0sq,
                  Rat& lhs, Rat& rhs) {
    Rat fu = value_of(f, u);
    lhs = fu * fu * value_of(f, v) * value_of(f, neg(v));
    rhs = f0sq * value_of(f, add(u, v)) * value_of(f, sub(u, v));
    return lhs == rhs;
}

} // namespace

FeqVerdict feq_check(const std::map<Elt, Rat>& f, const RingSpec& carrier) {
    Rat f0 = value_of(f, zero_of(carrier));
    Rat f0sq = f0 * f0;
    Rat lhs, rhs;
    if (carrier.is_finite()) {
        std::vector<Elt> all = enumerate(carrier);
        for (const Elt& u : all)
            for (const Elt& v : all)
                if (!feq_holds_at(f, u, v, f0sq, lhs, rhs)) return feq_fail(u, v, lhs, rhs);
        return {};
    }
    // On Q, restrict to pairs where a side can be nonzero: the left side
    // needs u, v, -v in the support; the right side needs u+v and u-v there,
    // i.e. (u, v) = ((a+b)/2, (a-b)/2) for support points a, b.
    std::set<Elt> support;
    for (const auto& [x, val] : f)
        if (val != 0) support.insert(x);
    std::set<std::pair<Elt, Elt>> candidates;
    for (const Elt& u : support)
        for (const Elt& v : support) {
            if (support.count(neg(v))) candidates.emplace(u, v);
            candidates.emplace(halve(add(u, v)), halve(sub(u, v)));
        }
    for (const auto& [u, v] : candidates)
        if (!feq_holds_at(f, u, v, f0sq, lhs, rhs)) return feq_fail(u, v, lhs, rhs);
    return {};
}

Report lemma1_roundtrip(const Dist& mu) {
    const RingSpec& spec = mu.carrier();
    if (!spec.is_finite() || !spec.is_field())
        fail(Errc::precondition_violated, "finite field carrier required");
    if (characteristic(spec) == 2) fail(Errc::precondition_violated, "odd characteristic required");
    if (mu.mass(zero_of(spec)) == 0) fail(Errc::precondition_violated, "mu(0) must be positive");

    Report report;
    report.scenario = "lemma1_roundtrip";
    report.params["field"] = spec.to_string();
    report.trials = 1;
    IndependenceVerdict indep = is_independent(push_T(mu, mu));
    FeqVerdict feq = feq_check(mu.pmf(), spec);
    report.pass = indep.independent == feq.pass;
    report.passes = report.pass ? 1 : 0;
    report.fails = report.pass ? 0 : 1;
    if (!report.pass) {
        nlohmann::json j;
        j["mu"] = mu.to_string();
        j["independent"] = indep.independent;
        j["feq_pass"] = feq.pass;
        report.witnesses.push_back(std::move(j));
    }
    return report;
}

SubgroupSpec support_subgroup(const std::map<Elt, Rat>& f, const RingSpec& carrier) {
    std::set<Elt> support;
    for (const auto& [x, val] : f)
        if (val != 0) support.insert(x);
    if (!support.count(zero_of(carrier)))
        fail(Errc::precondition_violated, "f(0) must be positive");
    for (const Elt& x : support) {
        if (!support.count(neg(x)))
            fail(Errc::not_a_subgroup, "support not closed under negation at " + elt_to_string(x));
        for (const Elt& y : support) {
            if (!support.count(add(x, y)))
                fail(Errc::not_a_subgroup, "support not closed under addition at " +
                                               elt_to_string(x) + "+" + elt_to_string(y));
        }
    }
    SubgroupSpec k{carrier, {}, {}};
    k.generators.assign(support.begin(), support.end());
    k.elements.assign(support.begin(), support.end());
    return k;
}

std::map<Elt, Rat> mdiff(const std::map<Elt, Rat>& f, const RingSpec& carrier, const Elt& h) {
    (void)carrier;
    std::map<Elt, Rat> out;
    for (const auto& [x, val] : f) {
        if (val == 0) fail(Errc::zero_value, "f vanishes at " + elt_to_string(x));
        auto shifted = f.find(add(x, h));
        if (shifted == f.end()) continue;
        if (shifted->second == 0) fail(Errc::zero_value, "f vanishes at a shifted point");
        Rat q = shifted->second / val;
        q.canonicalize();
        out.emplace(x, std::move(q));
    }
    return out;
}

std::map<Elt, Rat> mdiff_iter(const std::map<Elt, Rat>& f, const RingSpec& carrier, const Elt& u,
                              int order) {
    std::map<Elt, Rat> cur = f;
    for (int i = 0; i < order; ++i) cur = mdiff(cur, carrier, u);
    return cur;
}

// --- samplers ---

Dist sample_dist(Rng& rng, const RingSpec& carrier, const DistSampleOpts& opts) {
    std::vector<Elt> all = enumerate(carrier);
    for (;;) {
        std::map<Elt, Rat> weights;
        for (const Elt& x : all)
            if (rng.coin()) weights.emplace(x, Rat(static_cast<long>(rng.range(1, opts.mass_bound))));
        if (opts.require_zero_mass)
            weights.insert_or_assign(zero_of(carrier),
                                     Rat(static_cast<long>(rng.range(1, opts.mass_bound))));
        if (static_cast<int>(weights.size()) < opts.min_support) continue;
        Dist mu = Dist::from_weights(carrier, weights);
        if (opts.required_class && classify(mu).cls != *opts.required_class) continue;
        return mu;
    }
}

StepDensity sample_density(Rng& rng, long long p, int level, long long mass_bound) {
    long long pl = pow_ll(p, level);
    for (;;) {
        std::map<long long, Rat> weights;
        Rat total(0);
        for (long long r = 0; r < pl; ++r) {
            if (!rng.coin()) continue;
            Rat w(static_cast<long>(rng.range(1, mass_bound)));
            total += w;
            weights.emplace(r, std::move(w));
        }
        if (weights.empty()) continue;
        Rat scale = rat_pow(p, level) / total;
        std::map<long long, Rat> values;
        for (auto& [r, w] : weights) {
            Rat v = w * scale;
            v.canonicalize();
            values.emplace(r, std::move(v));
        }
        return StepDensity(p, level, std::move(values));
    }
}

// --- scenario verifiers ---

Report lemma1_verify(const RingSpec& carrier, long long trials, std::uint64_t seed) {
    if (!carrier.is_finite() || !carrier.is_field() || characteristic(carrier) == 2)
        fail(Errc::bad_config, "lemma1 needs a finite field of odd characteristic");
    Report report;
    report.scenario = "lemma1";
    report.params["field"] = carrier.to_string();
    report.params["trials"] = std::to_string(trials);
    report.seed = seed;
    DistSampleOpts opts;
    opts.require_zero_mass = true;
    for (long long i = 0; i < trials; ++i) {
        Rng rng = Rng::derive(seed, static_cast<std::uint64_t>(i));
        Dist mu = sample_dist(rng, carrier, opts);
        bool indep = is_independent(push_T(mu, mu)).independent;
        bool feq = feq_check(mu.pmf(), carrier).pass;
        ++report.trials;
        if (indep == feq) {
            ++report.passes;
        } else {
            ++report.fails;
            nlohmann::json j;
            j["trial"] = i;
            j["mu"] = mu.to_string();
            j["independent"] = indep;
            j["feq_pass"] = feq;
            report.witnesses.push_back(std::move(j));
        }
    }
    report.pass = report.fails == 0;
    return report;
}

Report theorem1_verify(const RingSpec& carrier, long long trials, std::uint64_t seed) {
    if (!carrier.is_finite() || !carrier.is_field() || characteristic(carrier) == 2)
        fail(Errc::bad_config, "theorem1 needs a finite field of odd characteristic");
    Report report;
    report.scenario = "theorem1";
    report.params["field"] = carrier.to_string();
    report.params["trials"] = std::to_string(trials);
    report.seed = seed;

    // (a) Every shift of every Haar subgroup distribution is independent.
    std::vector<Elt> all = enumerate(carrier);
    for (const SubgroupSpec& k : additive_subgroups(carrier)) {
        Dist haar = Dist::haar(k);
        for (const Elt& x : all) {
            Dist mu = haar.shifted(x);
            ++report.trials;
            if (is_independent(push_T(mu, mu)).independent) {
                ++report.passes;
            } else {
                ++report.fails;
                nlohmann::json j;
                j["part"] = "haar_shift";
                j["mu"] = mu.to_string();
                report.witnesses.push_back(std::move(j));
            }
        }
    }

    // (b) Random non-idempotent distributions must all fail.
    DistSampleOpts opts;
    opts.required_class = DistClass::other;
    for (long long i = 0; i < trials; ++i) {
        Rng rng = Rng::derive(seed, static_cast<std::uint64_t>(i));
        Dist mu = sample_dist(rng, carrier, opts);
        ++report.trials;
        if (!is_independent(push_T(mu, mu)).independent) {
            ++report.passes;
        } else {
            ++report.fails;
            nlohmann::json j;
            j["part"] = "random_other";
            j["trial"] = i;
            j["mu"] = mu.to_string();
            report.witnesses.push_back(std::move(j));
        }
    }

    // (c) Uniform distributions on subsets: independent iff a subgroup coset.
    // The sweep is exponential in the carrier size; larger carriers are
    // covered by (a) and (b).
    if (carrier.size() <= 12) {
        const size_t n = all.size();
        for (std::uint64_t mask = 1; mask < (1ull << n); ++mask) {
            std::map<Elt, Rat> weights;
            std::vector<Elt> subset;
            for (size_t i = 0; i < n; ++i) {
                if (mask & (1ull << i)) {
                    weights.emplace(all[i], Rat(1));
                    subset.push_back(all[i]);
                }
            }
            Dist mu = Dist::from_weights(carrier, weights);
            bool indep = is_independent(push_T(mu, mu)).independent;
            bool coset = coset_test(carrier, subset).has_value();
            ++report.trials;
            if (indep == coset) {
                ++report.passes;
            } else {
                ++report.fails;
                nlohmann::json j;
                j["part"] = "subset_sweep";
                j["mu"] = mu.to_string();
                j["independent"] = indep;
                j["is_coset"] = coset;
                report.witnesses.push_back(std::move(j));
            }
        }
    }

    report.pass = report.fails == 0;
    return report;
}

Report theorem2_search(long long radius, long long denom_bound, long long trials,
                       std::uint64_t seed) {
    if (radius < 1 || denom_bound < 1) fail(Errc::bad_config, "radius and denom bound must be >= 1");
    RingSpec q = RingSpec::rational_field();
    Report report;
    report.scenario = "theorem2";
    report.params["radius"] = std::to_string(radius);
    report.params["denom_bound"] = std::to_string(denom_bound);
    report.params["trials"] = std::to_string(trials);
    report.seed = seed;
    for (long long i = 0; i < trials; ++i) {
        Rng rng = Rng::derive(seed, static_cast<std::uint64_t>(i));
        long long den = rng.range(1, denom_bound);
        long long size = rng.range(2, 5);
        std::map<Elt, Rat> weights;
        while (static_cast<long long>(weights.size()) < size) {
            long long num = rng.range(-radius * den, radius * den);
            Rat point(to_z(num), to_z(den));
            point.canonicalize();
            weights.emplace(Elt(q, point), Rat(static_cast<long>(rng.range(1, 9))));
        }
        Dist mu = Dist::from_weights(q, weights);
        ++report.trials;
        IndependenceVerdict verdict = is_independent(push_T(mu, mu));
        if (!verdict.independent) {
            ++report.passes;
        } else {
            ++report.fails; // an independence pass would refute the theorem
            nlohmann::json j;
            j["trial"] = i;
            j["mu"] = mu.to_string();
            report.witnesses.push_back(std::move(j));
        }
    }
    report.pass = report.fails == 0;
    return report;
}

namespace {

// All pmfs on a carrier whose masses are multiples of 1/d for some d <= max_den.
std::vector<Dist> grid_dists(const RingSpec& carrier, long long max_den) {
    std::vector<Elt> all = enumerate(carrier);
    std::set<std::map<Elt, Rat>> seen;
    std::vector<Dist> out;
    for (long long den = 1; den <= max_den; ++den) {
        // Compositions of den into |carrier| nonnegative parts.
        std::vector<long long> parts(all.size(), 0);
        auto emit_current = [&] {
            std::map<Elt, Rat> pmf;
            for (size_t i = 0; i < all.size(); ++i) {
                if (parts[i] == 0) continue;
                Rat m(to_z(parts[i]), to_z(den));
                m.canonicalize();
                pmf.emplace(all[i], m);
            }
            if (seen.insert(pmf).second) out.emplace_back(carrier, pmf);
        };
        // Odometer over compositions.
        std::vector<long long> stack;
        std::function<void(size_t, long long)> rec = [&](size_t idx, long long remaining) {
            if (idx + 1 == parts.size()) {
                parts[idx] = remaining;
                emit_current();
                return;
            }
            for (long long take = 0; take <= remaining; ++take) {
                parts[idx] = take;
                rec(idx + 1, remaining - take);
            }
        };
        rec(0, den);
    }
    return out;
}

} // namespace

Report remark1_verify(const RingSpec& carrier, long long trials, std::uint64_t seed) {
    if (characteristic(carrier) != 2) fail(Errc::bad_config, "remark1 needs characteristic 2");
    Report report;
    report.scenario = "remark1";
    report.params["field"] = carrier.to_string();
    report.params["trials"] = std::to_string(trials);
    report.seed = seed;

    auto record = [&](const Dist& mu, const Dist& nu, const char* part) {
        bool degenerate_pair = mu.pmf().size() == 1 && nu.pmf().size() == 1;
        bool indep = is_independent(push_T(mu, nu)).independent;
        ++report.trials;
        // A degenerate pair is independent; anything else must be dependent.
        if (indep == degenerate_pair) {
            ++report.passes;
        } else {
            ++report.fails;
            nlohmann::json j;
            j["part"] = part;
            j["mu"] = mu.to_string();
            j["nu"] = nu.to_string();
            j["independent"] = indep;
            report.witnesses.push_back(std::move(j));
        }
    };

    if (carrier.size() == 2) {
        std::vector<Dist> grid = grid_dists(carrier, 4);
        for (const Dist& mu : grid)
            for (const Dist& nu : grid) record(mu, nu, "exhaustive_grid");
    }
    DistSampleOpts opts;
    for (long long i = 0; i < trials; ++i) {
        Rng rng = Rng::derive(seed, static_cast<std::uint64_t>(i));
        Dist mu = sample_dist(rng, carrier, opts);
        Dist nu = sample_dist(rng, carrier, opts);
        if (mu.pmf().size() == 1 && nu.pmf().size() == 1) {
            record(mu, nu, "random_degenerate");
        } else {
            record(mu, nu, "random");
        }
    }
    report.pass = report.fails == 0;
    return report;
}

Report remark2_counterexample(const RingSpec& carrier) {
    if (!carrier.is_finite() || !carrier.is_field() || characteristic(carrier) == 2)
        fail(Errc::bad_config, "remark2 needs a finite field of odd characteristic");
    Report report;
    report.scenario = "remark2";
    report.params["field"] = carrier.to_string();
    report.trials = 1;

    Elt e = one_of(carrier);
    std::map<Elt, Rat> weights;
    weights.emplace(e, Rat(1));
    weights.emplace(neg(e), Rat(1));
    Dist mu = Dist::from_weights(carrier, weights);
    Dist nu = Dist::degenerate(zero_of(carrier));
    bool indep = is_independent(push_T(mu, nu)).independent;
    bool other = classify(mu).cls == DistClass::other;
    report.pass = indep && other;
    report.passes = report.pass ? 1 : 0;
    report.fails = report.pass ? 0 : 1;
    nlohmann::json j;
    j["mu"] = mu.to_string();
    j["nu"] = nu.to_string();
    j["independent"] = indep;
    j["mu_class_other"] = other;
    if (!report.pass) report.witnesses.push_back(j);
    return report;
}

Report lemma3_verify(long long p, long long trials, int prec, std::uint64_t seed) {
    if (p == 2) fail(Errc::bad_config, "lemma3 random-square laws are checked for odd p");
    Report report;
    report.scenario = "lemma3";
    report.params["p"] = std::to_string(p);
    report.params["prec"] = std::to_string(prec);
    report.params["trials"] = std::to_string(trials);
    report.seed = seed;
    BranchTable table = branch_table(p);
    Int modulus = int_pow(p, static_cast<unsigned long>(prec));

    for (long long i = 0; i < trials; ++i) {
        Rng rng = Rng::derive(seed, static_cast<std::uint64_t>(i));
        // Random square: (p^v t)^2 for a random unit t mod p^prec.
        Int t = to_z(rng.range(1, pow_ll(p, std::min(prec, 6)) - 1));
        if (mod_pos(t, to_z(p)) == 0) t += 1;
        long long v = rng.range(-2, 2);
        PAdic root_free = PAdic::from_unit(p, v, t, prec);
        PAdic square = pmul(root_free, root_free);

        PAdic s = sqrt_hensel(square, table);
        PAdic s2 = sqrt_series(square, table);
        bool ok = true;
        ok = ok && padic_agree(pmul(s, s), square);
        ok = ok && s.valuation() == square.valuation() / 2;
        ok = ok && padic_agree(s, s2);
        long long lead = mod_pos(s.unit(), to_z(p)).get_si();
        ok = ok && std::find(table.branch_residues.begin(), table.branch_residues.end(), lead) !=
                       table.branch_residues.end();
        Rat n2 = pnorm(s) * pnorm(s);
        ok = ok && n2 == pnorm(square);
        // Scaling law s(p^2 x) = p s(x).
        PAdic scaled = PAdic::from_unit(p, square.valuation() + 2, square.unit(), square.rel_prec());
        PAdic s_scaled = sqrt_hensel(scaled, table);
        ok = ok && s_scaled.valuation() == s.valuation() + 1 &&
             mod_pos(s_scaled.unit() - s.unit(),
                     int_pow(p, static_cast<unsigned long>(
                                    std::min(s.rel_prec(), s_scaled.rel_prec())))) == 0;
        ++report.trials;
        if (ok) {
            ++report.passes;
        } else {
            ++report.fails;
            nlohmann::json j;
            j["trial"] = i;
            j["square"] = square.to_string();
            report.witnesses.push_back(std::move(j));
        }
    }
    report.pass = report.fails == 0;
    return report;
}

Report lemma4_verify(long long p, int max_level, long long extra_samples, std::uint64_t seed) {
    if (p == 2) fail(Errc::bad_config, "lemma4 residue check targets odd p");
    if (max_level < 3) fail(Errc::bad_config, "need level >= 3");
    Report report;
    report.scenario = "lemma4";
    report.params["p"] = std::to_string(p);
    report.params["level"] = std::to_string(max_level);
    report.params["extra_samples"] = std::to_string(extra_samples);
    report.seed = seed;

    auto check = [&](long long x0i, long long y0i, long long k, int level) {
        int prec = level + 2;
        PAdic x0 = PAdic::from_integer(p, to_z(x0i), prec);
        PAdic y0 = PAdic::from_integer(p, to_z(y0i), prec);
        ++report.trials;
        if (lemma4_check(x0, y0, k, level)) {
            ++report.passes;
        } else {
            ++report.fails;
            nlohmann::json j;
            j["x0"] = x0i;
            j["y0"] = y0i;
            j["k"] = k;
            j["level"] = level;
            report.witnesses.push_back(std::move(j));
        }
    };

    for (long long l = 0; l <= 1; ++l) {
        for (long long base : {0ll, 1ll}) {
            for (long long c : {1ll, p - 1}) {
                long long y0 = base + c * pow_ll(p, l);
                for (long long k = l + 1; k <= l + 2; ++k) {
                    int level = static_cast<int>(k + l + 1);
                    if (level > max_level) continue;
                    check(base, y0, k, level);
                }
            }
        }
    }
    for (long long i = 0; i < extra_samples; ++i) {
        Rng rng = Rng::derive(seed, static_cast<std::uint64_t>(i));
        long long l = rng.range(0, 1);
        long long base = rng.range(0, p * p - 1);
        long long c = rng.range(1, p - 1);
        long long k = l + rng.range(1, 2);
        int level = static_cast<int>(k + l + 1);
        if (level > max_level) {
            k = l + 1;
            level = static_cast<int>(k + l + 1);
        }
        check(base, base + c * pow_ll(p, l), k, level);
    }
    report.pass = report.fails == 0;
    return report;
}

Report lemma5_verify(long long p, int level, long long extra_samples, std::uint64_t seed) {
    if (p == 2) fail(Errc::bad_config, "lemma5 targets odd p");
    Report report;
    report.scenario = "lemma5";
    report.params["p"] = std::to_string(p);
    report.params["level"] = std::to_string(level);
    report.params["extra_samples"] = std::to_string(extra_samples);
    report.seed = seed;

    auto check = [&](long long u0i, long long v0i, long long k) {
        int prec = level + 4;
        PAdic u0 = PAdic::from_integer(p, to_z(u0i), prec);
        PAdic v0 = PAdic::from_integer(p, to_z(v0i), prec);
        Lemma5Result r = lemma5_check(u0, v0, k, level);
        ++report.trials;
        if (r.disjoint && r.jacobian_ok) {
            ++report.passes;
        } else {
            ++report.fails;
            nlohmann::json j;
            j["u0"] = u0i;
            j["v0"] = v0i;
            j["k"] = k;
            j["disjoint"] = r.disjoint;
            j["jacobian_ok"] = r.jacobian_ok;
            report.witnesses.push_back(std::move(j));
        }
    };

    BranchTable table = branch_table(p);
    std::vector<long long> unit_squares;
    for (long long t = 1; t < p && static_cast<long long>(unit_squares.size()) < 2; ++t) {
        long long sq = (t * t) % p;
        if (std::find(unit_squares.begin(), unit_squares.end(), sq) == unit_squares.end())
            unit_squares.push_back(sq);
    }
    for (long long l = 0; l <= 1; ++l) {
        for (long long w : unit_squares) {
            long long v0 = w * pow_ll(p, 2 * l);
            for (long long u0 : {0ll, 1ll}) {
                for (long long k = l + 1; k <= l + 2 && k + l <= level; ++k) check(u0, v0, k);
            }
        }
    }
    for (long long i = 0; i < extra_samples; ++i) {
        Rng rng = Rng::derive(seed, static_cast<std::uint64_t>(i));
        long long t = rng.range(1, p - 1);
        long long l = rng.range(0, 1);
        long long v0 = ((t * t) % p) * pow_ll(p, 2 * l);
        long long u0 = rng.range(0, p - 1);
        long long k = l + 1;
        check(u0, v0, k);
    }
    report.pass = report.fails == 0;
    return report;
}

Report eq12_verify(long long p, int level) {
    if (p == 2) fail(Errc::bad_config, "eq12 targets odd p");
    Report report;
    report.scenario = "eq12";
    report.params["p"] = std::to_string(p);
    report.params["level"] = std::to_string(level);
    for (long long c = 1; c < p; ++c) {
        for (long long m = 1; m <= 2; ++m) {
            ++report.trials;
            if (eq12_check(p, c, m, level)) {
                ++report.passes;
            } else {
                ++report.fails;
                nlohmann::json j;
                j["c"] = c;
                j["m"] = m;
                report.witnesses.push_back(std::move(j));
            }
        }
    }
    report.pass = report.fails == 0;
    return report;
}

Report theorem3_verify(long long p, int m, int level, long long trials, std::uint64_t seed) {
    if (p == 2) fail(Errc::bad_config, "theorem3 residue model needs odd p");
    if (m < 0 || level <= m) fail(Errc::bad_config, "need 0 <= m < level");
    Report report;
    report.scenario = "theorem3";
    report.params["p"] = std::to_string(p);
    report.params["m"] = std::to_string(m);
    report.params["level"] = std::to_string(level);
    report.params["trials"] = std::to_string(trials);
    report.seed = seed;

    RingSpec model_carrier = RingSpec::modular_ring(p, level);
    auto density_feq = [&](const StepDensity& rho) {
        StepDensity scaled = rho.at_level(level);
        std::map<Elt, Rat> f;
        for (const auto& [r, v] : scaled.values()) f.emplace(Elt(model_carrier, r), v);
        return feq_check(f, model_carrier);
    };

    // (a) The Haar density of p^m Z_p passes both checks.
    StepDensity haar = StepDensity::haar_ball(p, m, level);
    bool haar_feq = density_feq(haar).pass;
    bool haar_indep = residue_SD_test(haar, level).independent;
    ++report.trials;
    if (haar_feq && haar_indep) {
        ++report.passes;
    } else {
        ++report.fails;
        nlohmann::json j;
        j["part"] = "haar";
        j["feq_pass"] = haar_feq;
        j["independent"] = haar_indep;
        report.witnesses.push_back(std::move(j));
    }

    // (b) Random non-Haar densities fail the functional equation and fail
    // the residue independence test at some level <= `level`. The sampler
    // keeps rho(0) > 0, the standing hypothesis of the equivalence (the
    // source construction reduces to it by shifting), without which the
    // equation can hold vacuously on supports disjoint from their negation.
    for (long long i = 0; i < trials; ++i) {
        Rng rng = Rng::derive(seed, static_cast<std::uint64_t>(i));
        StepDensity rho = [&] {
            for (;;) {
                StepDensity cand = sample_density(rng, p, level);
                if (cand.value_at(0) == 0) continue;
                if (classify(cand.to_dist()).cls == DistClass::other) return cand;
            }
        }();
        bool feq_fails = !density_feq(rho).pass;
        bool residue_fails = false;
        for (int lv = 1; lv <= level && !residue_fails; ++lv)
            residue_fails = !residue_SD_test(rho, lv).independent;
        ++report.trials;
        if (feq_fails && residue_fails) {
            ++report.passes;
        } else {
            ++report.fails;
            nlohmann::json j;
            j["part"] = "random_non_haar";
            j["trial"] = i;
            j["rho"] = rho.to_json();
            j["feq_fails"] = feq_fails;
            j["residue_fails"] = residue_fails;
            report.witnesses.push_back(std::move(j));
        }
    }
    report.pass = report.fails == 0;
    return report;
}

Report remark3_verify(int m, int level) {
    if (m < 0) fail(Errc::bad_config, "m must be >= 0");
    // level > m+1 resolves the functional-equation evaluation; level >= 2m+1
    // keeps the D coordinate nondegenerate in Z/2^level ((2^m j)^2 vanishes
    // mod 2^level whenever level <= 2m, hiding the dependence).
    if (level <= m + 1 || level < 2 * m + 1)
        fail(Errc::bad_config, "need level > m+1 and level >= 2m+1");
    Report report;
    report.scenario = "remark3";
    report.params["m"] = std::to_string(m);
    report.params["level"] = std::to_string(level);

    // (a) Exact violation of the functional equation by the 2-adic Haar
    // density of 2^m Z_2 at u = v in 2^(m-1) Z_2 \ 2^m Z_2.
    StepDensity rho = StepDensity::haar_ball(2, m, level);
    Rat u = rat_pow(2, m - 1); // 1/2 when m = 0
    auto density_value = [&](const Rat& x) { return rho.value_at_rat(x); };
    Rat lhs = density_value(u) * density_value(u) * density_value(u) * density_value(-u);
    Rat rhs = density_value(Rat(0)) * density_value(Rat(0)) * density_value(u + u) *
              density_value(u - u);
    Rat expected_rhs = rat_pow(2, 4 * m);
    bool exact_ok = lhs == 0 && rhs == expected_rhs;
    ++report.trials;
    if (exact_ok) {
        ++report.passes;
    } else {
        ++report.fails;
    }
    {
        nlohmann::json j;
        j["part"] = "eq22_violation";
        j["u"] = rat_to_string(u);
        j["lhs"] = rat_to_string(lhs);
        j["rhs"] = rat_to_string(rhs);
        report.witnesses.push_back(std::move(j));
    }

    // (b) The Z/2^level residue model is dependent, with a recorded witness.
    IndependenceVerdict verdict = residue_SD_test(rho, level);
    ++report.trials;
    if (!verdict.independent) {
        ++report.passes;
        nlohmann::json j;
        j["part"] = "residue_dependence";
        j.update(independence_witness_json(verdict));
        report.witnesses.push_back(std::move(j));
    } else {
        ++report.fails;
        nlohmann::json j;
        j["part"] = "residue_dependence";
        j["independent"] = true;
        report.witnesses.push_back(std::move(j));
    }
    report.pass = report.fails == 0;
    return report;
}

} // namespace charfield
