#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "charfield/padic.hpp"
#include "charfield/ring.hpp"

namespace charfield {

// Distributions, pushforwards and locally constant densities. Like the rest
// of the library these are immutable values with pure operations.
//
// Finite-support probability mass function with exact rational masses.
// Stored masses are strictly positive and sum to 1 exactly.
class Dist {
public:
    Dist(RingSpec carrier, std::map<Elt, Rat> pmf);

    static Dist degenerate(const Elt& x);
    static Dist haar(const SubgroupSpec& subgroup);
    // Normalizes nonnegative weights (dropping zeros); their sum must be > 0.
    static Dist from_weights(const RingSpec& carrier, const std::map<Elt, Rat>& weights);

    const RingSpec& carrier() const { return carrier_; }
    const std::map<Elt, Rat>& pmf() const { return pmf_; }
    Rat mass(const Elt& x) const; // 0 off support
    std::vector<Elt> support() const;
    Dist shifted(const Elt& x) const;

    // "elem:num/den,elem:num/den,..." in sorted element order.
    std::string to_string() const;
    static Dist parse(const RingSpec& carrier, const std::string& text);

    friend bool operator==(const Dist& a, const Dist& b) {
        return a.carrier_ == b.carrier_ && a.pmf_ == b.pmf_;
    }

private:
    RingSpec carrier_;
    std::map<Elt, Rat> pmf_;
};

class JointDist {
public:
    JointDist(RingSpec carrier, std::map<std::pair<Elt, Elt>, Rat> pmf);

    const RingSpec& carrier() const { return carrier_; }
    const std::map<std::pair<Elt, Elt>, Rat>& pmf() const { return pmf_; }
    Rat mass(const Elt& u, const Elt& v) const;

    friend bool operator==(const JointDist& a, const JointDist& b) {
        return a.carrier_ == b.carrier_ && a.pmf_ == b.pmf_;
    }

private:
    RingSpec carrier_;
    std::map<std::pair<Elt, Elt>, Rat> pmf_;
};

// Pushforward of mu x nu under T(x,y) = (x+y, (x-y)^2), enumerated exactly.
// Valid in characteristic 2 as well. SpecMismatch for distinct carriers.
JointDist push_T(const Dist& mu, const Dist& nu);

// The joint of (S, D) for an iid pair drawn from mu, computed from the
// closed form
//   (u, 0)          -> mu(u/2)^2
//   (u, t^2), t != 0 -> 2 mu((u+t)/2) mu((u-t)/2)
// instead of pair enumeration; equals push_T(mu, mu) exactly. Finite carrier,
// characteristic != 2 (CharTwo).
JointDist closed_form_SD(const Dist& mu);

std::pair<Dist, Dist> marginals(const JointDist& joint);

// Product joint of two independent marginals (test helper).
JointDist product_joint(const Dist& a, const Dist& b);

struct IndependenceVerdict {
    bool independent = false;
    // First pair (u, v) in sorted order with joint(u,v) != mu_S(u) * mu_D(v).
    std::optional<std::pair<Elt, Elt>> witness;
    Rat joint_mass = 0;
    Rat product_mass = 0;
};

IndependenceVerdict is_independent(const JointDist& joint);

enum class DistClass { degenerate, haar_shift, other };

struct Classification {
    DistClass cls = DistClass::other;
    std::optional<SubgroupSpec> subgroup; // haar_shift only
    std::optional<Elt> shift;             // haar_shift only
};

// Degenerate if the support is a single point; HaarShift if the support is a
// coset x + K and all masses equal 1/|K|; Other otherwise.
Classification classify(const Dist& mu);

// Locally constant density on Z_p at resolution p^level: rho is constant on
// each residue class mod p^level with a nonnegative rational value, and the
// class values v_r satisfy sum v_r * p^(-level) = 1 (each class has Haar
// mass p^(-level)). Classes of value 0 are not stored.
class StepDensity {
public:
    StepDensity(long long p, int level, std::map<long long, Rat> values);

    // Haar density of p^m Z_p: value p^m on classes = 0 mod p^m.
    static StepDensity haar_ball(long long p, int m, int level);

    long long prime() const { return p_; }
    int level() const { return level_; }
    const std::map<long long, Rat>& values() const { return values_; }

    Rat value_at(long long residue) const; // 0 off support
    // Evaluate at an exact rational point of Q_p (0 outside Z_p).
    Rat value_at_rat(const Rat& x) const;

    // Exact refinement (children copy the parent value) or coarsening
    // (child masses add up) to another resolution.
    StepDensity at_level(int level) const;

    // The pmf on Z/p^level with mass value * p^(-level) per class.
    Dist to_dist() const;

    std::string to_string() const; // "residue:num/den,..." sorted

    // {p, level, values: {residue: "num/den"}}
    nlohmann::json to_json() const;
    static StepDensity from_json(const nlohmann::json& j);

private:
    long long p_;
    int level_;
    std::map<long long, Rat> values_;
};

// Density of (S, D) for an iid pair with density rho, from the closed form
//   rho_SD(u, v) = 2 rho((u+s(v))/2) rho((u-s(v))/2) |s(v)|_p^(-1)
// on square v != 0, and 0 on classes containing no nonzero square. Values are
// computed at the canonical representative of each class mod p^level; they
// are class-constant exactly on unit-square v classes. Odd p only
// (UnsupportedPrime for p = 2, which goes through the residue test instead).
std::map<std::pair<long long, long long>, Rat> density_SD(const StepDensity& rho,
                                                          const BranchTable& table);

// Necessary-condition residue model: converts rho to a pmf on Z/p^level,
// pushes it through T there and tests independence. Independence over Q_p
// implies independence at every level, so a false verdict certifies
// dependence.
IndependenceVerdict residue_SD_test(const StepDensity& rho, int level);

} // namespace charfield
