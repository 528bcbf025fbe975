#pragma once

// Exhaustive finite-universe engine for down sets, ideals and the
// intersection of Gamma-maximal ideals.
//
// A subset of the universe {0, ..., n-1} is a bitmask; a family of subsets is
// a bitmask over the 2^n subsets, so n <= 5 fits in 32 bits. Exhaustive checks
// are limited to n <= 4 (168 down sets at n = 4).

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace porosity::ideals {

using Subset = std::uint32_t;

inline constexpr int kMaxUniverse = 5;
inline constexpr int kMaxExhaustive = 4;

class Universe {
public:
    explicit Universe(int size);

    int size() const { return size_; }
    int subset_count() const { return 1 << size_; }
    Subset full() const { return static_cast<Subset>(subset_count() - 1); }
    bool contains(Subset s) const { return (s & ~full()) == 0; }

    friend bool operator==(const Universe&, const Universe&) = default;

private:
    int size_;
};

class FamilyOfSets {
public:
    FamilyOfSets(Universe universe, const std::vector<Subset>& members);
    static FamilyOfSets from_mask(Universe universe, std::uint32_t mask);
    static FamilyOfSets power_set(Universe universe, Subset of);

    const Universe& universe() const { return universe_; }
    std::uint32_t mask() const { return mask_; }
    bool contains(Subset s) const;
    bool empty() const { return mask_ == 0; }
    int size() const;
    std::vector<Subset> members() const;

    /// V(family): the union of all members.
    Subset support() const;

    bool is_subfamily_of(const FamilyOfSets& other) const { return (mask_ & ~other.mask_) == 0; }
    FamilyOfSets intersection(const FamilyOfSets& other) const;

    friend bool operator==(const FamilyOfSets&, const FamilyOfSets&) = default;

private:
    FamilyOfSets(Universe universe, std::uint32_t mask, bool) : universe_(universe), mask_(mask) {}

    Universe universe_;
    std::uint32_t mask_ = 0;
};

bool is_down_set(const FamilyOfSets& f);

/// Ideal on the ground set `ground` (a subset of the universe). The empty family is never an ideal.
bool is_ideal(const FamilyOfSets& f, Subset ground);
bool is_ideal(const FamilyOfSets& f, const Universe& x);

struct GeneratedIdeal {
    FamilyOfSets family;
    bool is_ideal;  // false when V(gamma) itself is a finite union of members
};

/// All finite unions of members. Throws std::invalid_argument unless gamma is a nonempty down set.
GeneratedIdeal generated_ideal(const FamilyOfSets& gamma);

/// Every ideal I on V(gamma) with I inside gamma that no ideal J with I < J <= gamma extends.
/// Definition-level search over all sub-families; no precondition on gamma.
std::vector<FamilyOfSets> maximal_ideals_within(const FamilyOfSets& gamma);

/// As maximal_ideals_within, but requires a nonempty down set with V(gamma) not in gamma.
std::vector<FamilyOfSets> gamma_maximal_ideals(const FamilyOfSets& gamma);

/// Intersection of the Gamma-maximal ideals; {empty set} when V(gamma) is in gamma.
FamilyOfSets i_hat(const FamilyOfSets& gamma);

/// { S subset of V(gamma) : S u B in gamma for all B in gamma }.
FamilyOfSets i_star(const FamilyOfSets& gamma);

/// All down-closed families over the universe, including the empty family.
std::vector<FamilyOfSets> enumerate_down_sets(const Universe& universe);

struct IdealReport {
    FamilyOfSets gamma;
    std::vector<FamilyOfSets> maximal_ideals;
    FamilyOfSets i_hat;
    FamilyOfSets i_star;
    bool equal;
};

IdealReport ideal_report(const FamilyOfSets& gamma);
nlohmann::json to_json(const IdealReport& report);

struct UniverseTally {
    int universe_size = 0;
    int scanned = 0;     // families enumerated
    int qualifying = 0;  // families meeting the check's hypothesis
    int counterexamples = 0;
};

struct TheoremCheck {
    std::string name;
    std::vector<UniverseTally> per_universe;
    std::vector<FamilyOfSets> counterexamples;  // first few, for diagnostics

    int scanned() const;
    int qualifying() const;
    int counterexample_count() const;
};

/// I*(gamma) == I-hat(gamma), both ideals, over every nonempty down set with V not in gamma, |U| <= n.
TheoremCheck check_theorem_istar_eq_ihat(int n);

/// With gamma = 2^V: an ideal is 2^V-maximal iff it is prime (A or V\A in I for every A).
/// `qualifying` counts the prime ideals found for each universe.
TheoremCheck check_prime_iff_maximal(int n);

/// (down set and V not in gamma) <=> (every member lies in some gamma-maximal ideal),
/// over every nonempty family of subsets, |U| <= n.
TheoremCheck check_maximal_ideal_existence(int n);

/// Over nonempty down sets: I*(gamma) is an ideal on V iff V not in gamma; and
/// V in gamma <=> V in I*(gamma); and I*(gamma) is a down set.
TheoremCheck check_istar_ideal_iff(int n);

/// generated_ideal is the least ideal on V containing gamma, whenever it is an ideal.
TheoremCheck check_generated_ideal_minimality(int n);

nlohmann::json to_json(const TheoremCheck& check);

std::string format_family(const FamilyOfSets& f);

}  // namespace porosity::ideals
