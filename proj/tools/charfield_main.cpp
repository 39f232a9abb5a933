// charfield -- exact verification of the S = xi+eta, D = (xi-eta)^2
// independence characterization on finite fields, Q and Q_p.
//
// Exit codes: 0 all assertions hold, 1 a counterexample or domain failure,
// 2 configuration error.

#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "charfield/characterize.hpp"
#include "charfield/harness.hpp"

using namespace charfield;

namespace {

std::uint64_t env_seed() {
    const char* s = std::getenv("CHARFIELD_SEED");
    if (!s) return 0;
    try {
        return std::stoull(s);
    } catch (const std::exception&) {
        fail(Errc::bad_config, "CHARFIELD_SEED is not a number");
    }
}

PAdic parse_padic(long long p, const std::string& text, int prec) {
    return PAdic::from_rational(p, rat_from_string(text), prec);
}

nlohmann::json padic_json(const PAdic& x) {
    nlohmann::json j;
    j["p"] = x.prime();
    j["zero"] = x.is_zero();
    if (x.is_zero()) {
        j["val"] = 0;
        j["digits"] = nlohmann::json::array();
        j["prec"] = x.abs_prec();
    } else {
        j["val"] = x.valuation();
        j["digits"] = x.digits();
        j["prec"] = x.rel_prec();
    }
    return j;
}

nlohmann::json joint_json(const JointDist& joint) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& [uv, m] : joint.pmf())
        rows.push_back({elt_to_string(uv.first), elt_to_string(uv.second), rat_to_string(m)});
    return rows;
}

int run_verify(const ScenarioConfig& config) {
    Report report = run(config);
    std::cout << report.to_json().dump(2) << "\n";
    std::cerr << "[charfield] " << report.scenario << (report.pass ? " PASS" : " FAIL") << " in "
              << report.runtime_ms << " ms\n";
    return report.pass ? 0 : 1;
}

int run_padic(const std::string& op, long long p, const std::string& value,
              const std::string& value2, int prec, long long radius, int level) {
    if (!is_prime(p)) fail(Errc::bad_config, "--p must be prime");
    if (op == "branch-table") {
        BranchTable t = branch_table(p);
        nlohmann::json j;
        j["p"] = p;
        if (p == 2) {
            j["rule"] = "unit = 1 (mod 4)";
        } else {
            j["g"] = t.g;
            j["branch_residues"] = t.branch_residues;
        }
        std::cout << j.dump(2) << "\n";
        return 0;
    }
    PAdic a = parse_padic(p, value, prec);
    if (op == "ball-residues") {
        Ball ball{a, radius};
        nlohmann::json j;
        j["center"] = padic_json(ball.center);
        j["radius_exp"] = ball.radius_exp;
        j["level"] = level;
        j["residues"] = ball_residues(ball, level);
        std::cout << j.dump(2) << "\n";
        return 0;
    }
    if (op == "norm") {
        std::cout << rat_to_string(pnorm(a)) << "\n";
        return 0;
    }
    if (op == "is-square") {
        bool sq = is_square(a);
        std::cout << (sq ? "true" : "false") << "\n";
        return 0;
    }
    if (op == "sqrt" || op == "sqrt-series") {
        BranchTable t = branch_table(p);
        PAdic r = op == "sqrt" ? sqrt_hensel(a, t) : sqrt_series(a, t);
        std::cout << r.to_string() << "\n" << padic_json(r).dump(2) << "\n";
        return 0;
    }
    if (value2.empty()) fail(Errc::bad_config, "padic " + op + " needs --value2");
    PAdic b = parse_padic(p, value2, prec);
    PAdic r = [&] {
        if (op == "add") return padd(a, b);
        if (op == "sub") return psub(a, b);
        if (op == "mul") return pmul(a, b);
        if (op == "div") return pdiv(a, b);
        fail(Errc::bad_config, "unknown padic op '" + op + "'");
    }();
    std::cout << r.to_string() << "\n" << padic_json(r).dump(2) << "\n";
    return 0;
}

int run_dist(const std::string& op, const RingSpec& field, const std::string& mu_text,
             const std::string& nu_text) {
    Dist mu = Dist::parse(field, mu_text);
    if (op == "classify") {
        Classification c = classify(mu);
        nlohmann::json j;
        j["class"] = c.cls == DistClass::degenerate  ? "Degenerate"
                     : c.cls == DistClass::haar_shift ? "HaarShift"
                                                      : "Other";
        if (c.cls == DistClass::haar_shift) {
            j["shift"] = elt_to_string(*c.shift);
            nlohmann::json elems = nlohmann::json::array();
            for (const Elt& x : c.subgroup->elements) elems.push_back(elt_to_string(x));
            j["subgroup"] = elems;
        }
        std::cout << j.dump(2) << "\n";
        return 0;
    }
    if (op == "closed-form") {
        std::cout << joint_json(closed_form_SD(mu)).dump(2) << "\n";
        return 0;
    }
    Dist nu = nu_text.empty() ? mu : Dist::parse(field, nu_text);
    JointDist joint = push_T(mu, nu);
    if (op == "push") {
        std::cout << joint_json(joint).dump(2) << "\n";
        return 0;
    }
    if (op == "marginals") {
        auto [s, d] = marginals(joint);
        nlohmann::json j;
        j["S"] = s.to_string();
        j["D"] = d.to_string();
        std::cout << j.dump(2) << "\n";
        return 0;
    }
    if (op == "independent") {
        IndependenceVerdict v = is_independent(joint);
        nlohmann::json j;
        j["independent"] = v.independent;
        if (!v.independent) {
            j["witness"] = {elt_to_string(v.witness->first), elt_to_string(v.witness->second)};
            j["joint"] = rat_to_string(v.joint_mass);
            j["product"] = rat_to_string(v.product_mass);
        }
        std::cout << j.dump(2) << "\n";
        return 0;
    }
    fail(Errc::bad_config, "unknown dist op '" + op + "'");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact verification lab for the (S, D) independence characterization"};
    app.require_subcommand(1);

    // verify
    auto* verify = app.add_subcommand("verify", "run a verification scenario");
    std::string scenario;
    std::string field_text;
    ScenarioConfig config;
    bool seed_given = false;
    verify->add_option("scenario", scenario,
                       "lemma1|theorem1|theorem2|remark1|remark2|theorem3|remark3|lemma4|lemma5|eq12")
        ->required();
    verify->add_option("--field", field_text, "carrier: fp:p, fpn:p,n, zmod:p,N or q");
    verify->add_option("--p", config.p, "prime for p-adic scenarios");
    verify->add_option("--m", config.m, "ball exponent (theorem3/remark3)");
    verify->add_option("--level", config.level, "residue level N");
    verify->add_option("--radius", config.radius, "support radius on Q (theorem2)");
    verify->add_option("--denom-bound", config.denom_bound, "denominator bound on Q (theorem2)");
    verify->add_option("--trials", config.trials, "number of randomized trials");
    auto* seed_opt = verify->add_option("--seed", config.seed, "master seed (default CHARFIELD_SEED)");
    verify->add_option("--prec", config.prec, "working p-adic precision");
    verify->add_option("--out", config.out_path, "write the canonical JSON report here");

    // padic
    auto* padic = app.add_subcommand("padic", "p-adic computations");
    std::string padic_op, padic_value, padic_value2;
    long long padic_p = 0;
    int padic_prec = 8;
    padic
        ->add_option("op", padic_op,
                     "add|sub|mul|div|norm|is-square|sqrt|sqrt-series|branch-table|ball-residues")
        ->required();
    padic->add_option("--p", padic_p, "prime")->required();
    padic->add_option("--value", padic_value, "operand (integer or num/den)");
    padic->add_option("--value2", padic_value2, "second operand");
    padic->add_option("--prec", padic_prec, "relative precision (default 8)");
    long long padic_radius = 0;
    int padic_level = 2;
    padic->add_option("--radius", padic_radius, "ball radius exponent (ball-residues)");
    padic->add_option("--level", padic_level, "residue level (ball-residues)");

    // dist
    auto* dist = app.add_subcommand("dist", "exact distribution computations");
    std::string dist_op, dist_field, dist_mu, dist_nu;
    dist->add_option("op", dist_op, "push|closed-form|marginals|independent|classify")->required();
    dist->add_option("--field", dist_field, "carrier spec")->required();
    dist->add_option("--mu", dist_mu, "pmf literal elem:num/den,...")->required();
    dist->add_option("--nu", dist_nu, "second pmf literal (defaults to mu)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (verify->parsed()) {
            config.scenario = scenario;
            if (!field_text.empty()) config.field = RingSpec::parse(field_text);
            seed_given = seed_opt->count() > 0;
            if (!seed_given) config.seed = env_seed();
            return run_verify(config);
        }
        if (padic->parsed()) {
            if (padic_value.empty() && padic_op != "branch-table")
                fail(Errc::bad_config, "padic " + padic_op + " needs --value");
            return run_padic(padic_op, padic_p, padic_value, padic_value2, padic_prec,
                             padic_radius, padic_level);
        }
        if (dist->parsed()) return run_dist(dist_op, RingSpec::parse(dist_field), dist_mu, dist_nu);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.code() == Errc::bad_config || e.code() == Errc::io_error ? 2 : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
