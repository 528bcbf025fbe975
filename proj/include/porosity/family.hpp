#pragma once

// Parametric generators of subsets of R+ accumulating at 0.

#include <memory>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "porosity/chain.hpp"

namespace porosity {

class TailFamily;
using FamilyPtr = std::shared_ptr<const TailFamily>;

/// Points x0 * rho^n, n >= 0.
struct GeometricLadder {
    Rational x0;
    Rational rho;
};

/// Points x0 * rho^(n(n+1)/2), n >= 0.
struct SuperGeometricLadder {
    Rational x0;
    Rational rho;
};

/// Blocks j = 1, 2, ... of points y(0,j) > ... > y(j,j) with y(k,j) = alpha^k y(k-1,j),
/// y(0,1) = x0 and y(0,j+1) = alpha^(j+1) y(j,j).
struct ExampleFamily {
    Rational alpha;
    Rational x0;
};

struct ExplicitChain {
    Chain chain;
};

struct UnionOf {
    std::vector<FamilyPtr> members;
};

struct BlowupOf {
    FamilyPtr inner;
    Rational q;
};

class TailFamily {
public:
    using Variant = std::variant<GeometricLadder, SuperGeometricLadder, ExampleFamily, ExplicitChain, UnionOf, BlowupOf>;

    explicit TailFamily(Variant v);

    const Variant& variant() const { return v_; }
    std::string kind() const;

    /// Whether 0 is an accumulation point of the generated set.
    bool has_zero_accumulation() const;

    /// First `depth` blocks (ExampleFamily: `depth` full point blocks), horizon at the
    /// smallest emitted coordinate. Throws std::invalid_argument for depth < 1.
    Chain expand(int depth) const;

private:
    Variant v_;
};

FamilyPtr geometric_ladder(Rational x0, Rational rho);
FamilyPtr super_geometric_ladder(Rational x0, Rational rho);
FamilyPtr example_family(Rational alpha, Rational x0 = 1);
FamilyPtr explicit_chain(Chain chain);
FamilyPtr union_of(std::vector<FamilyPtr> members);
FamilyPtr blowup_of(FamilyPtr inner, Rational q);

/// Descriptor format: {"variant": "...", ...}, rationals as "p/q" strings.
nlohmann::json to_json(const TailFamily& f);
FamilyPtr family_from_json(const nlohmann::json& j);
nlohmann::json to_json(const Chain& c);
Chain chain_from_json(const nlohmann::json& j);

}  // namespace porosity
