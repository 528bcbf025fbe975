#pragma once

// Finite pieces of a subset of (0, U]: points and open intervals with
// rational endpoints, plus the knowledge horizon below which the set is
// unspecified.

#include <string>
#include <vector>

#include "porosity/rational.hpp"

namespace porosity {

/// A point {lo} when lo == hi, otherwise the open interval (lo, hi).
struct Block {
    Rational lo;
    Rational hi;

    static Block point(Rational x);
    static Block interval(Rational lo, Rational hi);

    bool is_point() const { return lo == hi; }
    bool contains(const Rational& x) const;
    /// Set inclusion of blocks.
    bool within(const Block& outer) const;

    friend bool operator==(const Block& a, const Block& b) { return a.lo == b.lo && a.hi == b.hi; }
};

std::string to_string(const Block& b);

/// Connected components of the union, listed in descending order.
/// Intervals meeting with positive length merge, interior points are absorbed,
/// and (l,m) {m} (m,h) joins into (l,h). Intervals that only touch stay apart.
std::vector<Block> normalize(std::vector<Block> blocks);

/// a is contained in b as sets (both arbitrary block lists).
bool is_subset(const std::vector<Block>& a, const std::vector<Block>& b);

/// Intersection with the open window (x, y), normalized.
std::vector<Block> restrict_to(const std::vector<Block>& blocks, const Rational& x, const Rational& y);

std::vector<Block> set_union(const std::vector<Block>& a, const std::vector<Block>& b);

/// Descending blocks of E intersected with (0, upper], known exactly above
/// `horizon` and unspecified on (0, horizon].
class Chain {
public:
    /// Validates order, positivity and bounds; throws std::invalid_argument.
    Chain(std::vector<Block> blocks, Rational upper, Rational horizon);

    /// Normalizes `blocks` and drops whatever lies wholly inside (0, horizon].
    static Chain normalized(std::vector<Block> blocks, Rational upper, Rational horizon);

    const std::vector<Block>& blocks() const { return blocks_; }
    const Rational& upper() const { return upper_; }
    const Rational& horizon() const { return horizon_; }
    std::size_t size() const { return blocks_.size(); }
    bool empty() const { return blocks_.empty(); }

    /// The block lies entirely in the known region.
    bool is_reliable(std::size_t i) const { return blocks_.at(i).lo >= horizon_; }
    bool has_points() const;
    bool has_intervals() const;

private:
    std::vector<Block> blocks_;
    Rational upper_;
    Rational horizon_;
};

std::string to_string(const Chain& c);

}  // namespace porosity
