#pragma once

// q-blow-up E(q) = union of (x/q, qx) over x in E, first-level components
// inside (0, 1], and executable checks of the structural blow-up lemmas.

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "porosity/chain.hpp"
#include "porosity/family.hpp"

namespace porosity {

/// Throws std::invalid_argument unless q > 1.
void require_blowup_factor(const Rational& q);

/// {x} -> (x/q, qx); (a, b) -> (a/q, qb).
Block blow_up_block(const Block& b, const Rational& q);

/// Blown blocks merged into components. E(q) is known exactly above q * eps,
/// so the horizon moves to q * eps and the upper bound to q * U.
Chain blow_up_chain(const Chain& c, const Rational& q);

/// Reliable interval components with hi <= 1, descending.
/// Throws std::invalid_argument if the chain still holds isolated points.
std::vector<Block> cc1_components(const Chain& c);

struct InclusionReport {
    bool precondition_holds = false;
    bool inclusion_holds = false;
    Rational window_lo;
    Rational window_hi;
    std::string detail;
};

/// (0,t) n B within (0,t) n A at depth implies (0, t/q) n B(q) within (0, t/q) n A(q),
/// compared on the region known for both blow-ups.
InclusionReport check_inclusion_lemma(const TailFamily& a, const TailFamily& b, const Rational& t, const Rational& q,
                                      int depth);

/// Same comparison on (0, c*t) for an arbitrary c > 0.
InclusionReport check_inclusion_at_scale(const TailFamily& a, const TailFamily& b, const Rational& t,
                                         const Rational& q, const Rational& c, int depth);

struct CoveringBlowup {
    Rational s;             // porosity margin read from the deepest probes
    Rational q;             // 1 / (1 - s)
    Rational t;             // E(q) covers (covered_from, t)
    Rational covered_from;  // q * eps
};

/// A q for which E(q) swallows a whole neighbourhood (covered_from, t), or none when
/// the family is certified strongly porous or the probe ratios keep growing.
std::optional<CoveringBlowup> find_covering_blowup(const TailFamily& f, int depth);

/// Random descending chain of points and intervals in (0, 1] with small denominators.
Chain random_chain(std::mt19937_64& rng, int max_blocks);

struct PropertyTally {
    std::string name;
    int checked = 0;
    int violations = 0;
};

struct BlowupSweep {
    std::uint64_t seed = 0;
    int trials = 0;
    std::vector<PropertyTally> properties;

    int total_violations() const;
};

/// Seeded sweep of the blow-up laws over random chains.
BlowupSweep blowup_property_sweep(std::uint64_t seed, int trials);

}  // namespace porosity
