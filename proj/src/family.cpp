#include "porosity/family.hpp"

#include <algorithm>
#include <stdexcept>

#include "porosity/blowup.hpp"

namespace porosity {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void require_unit_ratio(const Rational& r, const char* name) {
    if (r <= 0 || r >= 1) {
        throw std::invalid_argument(std::string(name) + " must lie in (0, 1), got " + to_string(r));
    }
}

void require_positive(const Rational& r, const char* name) {
    if (r <= 0) {
        throw std::invalid_argument(std::string(name) + " must be positive, got " + to_string(r));
    }
}

Chain ladder(const Rational& x0, const Rational& rho, int depth, bool super) {
    std::vector<Block> blocks;
    Rational x = x0;
    Rational step = rho;
    for (int n = 0; n < depth; ++n) {
        blocks.push_back(Block::point(x));
        x *= step;
        if (super) {
            step *= rho;
        }
    }
    Rational eps = blocks.back().lo;
    return Chain(std::move(blocks), x0, std::move(eps));
}

Chain example_points(const ExampleFamily& e, int depth) {
    std::vector<Block> blocks;
    Rational y = e.x0;
    for (int j = 1; j <= depth; ++j) {
        if (j > 1) {
            y *= pow(e.alpha, j);  // y(0,j) = alpha^j y(j-1,j-1)
        }
        blocks.push_back(Block::point(y));
        for (int k = 1; k <= j; ++k) {
            y *= pow(e.alpha, k);
            blocks.push_back(Block::point(y));
        }
    }
    return Chain(std::move(blocks), e.x0, y);
}

Rational json_rational(const nlohmann::json& j, const char* key) {
    if (!j.contains(key)) {
        throw std::invalid_argument(std::string("missing field '") + key + "'");
    }
    const auto& v = j.at(key);
    if (v.is_string()) {
        return parse_rational(v.get<std::string>());
    }
    if (v.is_number_integer()) {
        return Rational(v.get<long>());
    }
    throw std::invalid_argument(std::string("field '") + key + "' must be a \"p/q\" string");
}

Rational json_rational_or(const nlohmann::json& j, const char* key, const Rational& fallback) {
    return j.contains(key) ? json_rational(j, key) : fallback;
}

}  // namespace

TailFamily::TailFamily(Variant v) : v_(std::move(v)) {}

std::string TailFamily::kind() const {
    return std::visit(overloaded{[](const GeometricLadder&) { return "GeometricLadder"; },
                                 [](const SuperGeometricLadder&) { return "SuperGeometricLadder"; },
                                 [](const ExampleFamily&) { return "ExampleFamily"; },
                                 [](const ExplicitChain&) { return "ExplicitChain"; },
                                 [](const UnionOf&) { return "UnionOf"; },
                                 [](const BlowupOf&) { return "BlowupOf"; }},
                      v_);
}

bool TailFamily::has_zero_accumulation() const {
    return std::visit(overloaded{[](const ExplicitChain&) { return false; },
                                 [](const UnionOf& u) {
                                     return std::any_of(u.members.begin(), u.members.end(),
                                                        [](const FamilyPtr& m) { return m->has_zero_accumulation(); });
                                 },
                                 [](const BlowupOf& b) { return b.inner->has_zero_accumulation(); },
                                 [](const auto&) { return true; }},
                      v_);
}

Chain TailFamily::expand(int depth) const {
    if (depth < 1) {
        throw std::invalid_argument("depth must be at least 1");
    }
    return std::visit(
        overloaded{[&](const GeometricLadder& g) { return ladder(g.x0, g.rho, depth, false); },
                   [&](const SuperGeometricLadder& g) { return ladder(g.x0, g.rho, depth, true); },
                   [&](const ExampleFamily& e) { return example_points(e, depth); },
                   [&](const ExplicitChain& e) {
                       const auto& c = e.chain;
                       if (static_cast<std::size_t>(depth) >= c.size()) {
                           return c;
                       }
                       std::vector<Block> prefix(c.blocks().begin(), c.blocks().begin() + depth);
                       Rational eps = prefix.back().lo;
                       return Chain(std::move(prefix), c.upper(), std::move(eps));
                   },
                   [&](const UnionOf& u) {
                       std::vector<Block> all;
                       Rational upper = 0;
                       Rational eps = 0;
                       for (const auto& m : u.members) {
                           const Chain c = m->expand(depth);
                           all.insert(all.end(), c.blocks().begin(), c.blocks().end());
                           upper = std::max(upper, c.upper());
                           eps = std::max(eps, c.horizon());
                       }
                       return Chain::normalized(std::move(all), std::move(upper), std::move(eps));
                   },
                   [&](const BlowupOf& b) { return blow_up_chain(b.inner->expand(depth), b.q); }},
        v_);
}

FamilyPtr geometric_ladder(Rational x0, Rational rho) {
    require_positive(x0, "x0");
    require_unit_ratio(rho, "rho");
    return std::make_shared<const TailFamily>(GeometricLadder{std::move(x0), std::move(rho)});
}

FamilyPtr super_geometric_ladder(Rational x0, Rational rho) {
    require_positive(x0, "x0");
    require_unit_ratio(rho, "rho");
    return std::make_shared<const TailFamily>(SuperGeometricLadder{std::move(x0), std::move(rho)});
}

FamilyPtr example_family(Rational alpha, Rational x0) {
    require_unit_ratio(alpha, "alpha");
    require_positive(x0, "x0");
    return std::make_shared<const TailFamily>(ExampleFamily{std::move(alpha), std::move(x0)});
}

FamilyPtr explicit_chain(Chain chain) { return std::make_shared<const TailFamily>(ExplicitChain{std::move(chain)}); }

FamilyPtr union_of(std::vector<FamilyPtr> members) {
    if (members.empty()) {
        throw std::invalid_argument("UnionOf needs at least one member");
    }
    for (const auto& m : members) {
        if (!m) {
            throw std::invalid_argument("UnionOf member is null");
        }
    }
    return std::make_shared<const TailFamily>(UnionOf{std::move(members)});
}

FamilyPtr blowup_of(FamilyPtr inner, Rational q) {
    if (!inner) {
        throw std::invalid_argument("BlowupOf needs an inner family");
    }
    require_blowup_factor(q);
    return std::make_shared<const TailFamily>(BlowupOf{std::move(inner), std::move(q)});
}

nlohmann::json to_json(const Chain& c) {
    nlohmann::json blocks = nlohmann::json::array();
    for (const auto& b : c.blocks()) {
        if (b.is_point()) {
            blocks.push_back({{"point", to_string(b.lo)}});
        } else {
            blocks.push_back({{"lo", to_string(b.lo)}, {"hi", to_string(b.hi)}});
        }
    }
    return {{"blocks", blocks}, {"upper", to_string(c.upper())}, {"horizon", to_string(c.horizon())}};
}

Chain chain_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("blocks") || !j.at("blocks").is_array()) {
        throw std::invalid_argument("chain needs a \"blocks\" array");
    }
    std::vector<Block> blocks;
    Rational top = 0;
    for (const auto& b : j.at("blocks")) {
        if (b.contains("point")) {
            blocks.push_back(Block::point(json_rational(b, "point")));
        } else {
            blocks.push_back(Block::interval(json_rational(b, "lo"), json_rational(b, "hi")));
        }
        top = std::max(top, blocks.back().hi);
    }
    Rational upper = json_rational_or(j, "upper", top > 0 ? top : Rational(1));
    return Chain(std::move(blocks), std::move(upper), json_rational_or(j, "horizon", 0));
}

nlohmann::json to_json(const TailFamily& f) {
    nlohmann::json j;
    j["variant"] = f.kind();
    std::visit(overloaded{[&](const GeometricLadder& g) {
                              j["x0"] = to_string(g.x0);
                              j["rho"] = to_string(g.rho);
                          },
                          [&](const SuperGeometricLadder& g) {
                              j["x0"] = to_string(g.x0);
                              j["rho"] = to_string(g.rho);
                          },
                          [&](const ExampleFamily& e) {
                              j["alpha"] = to_string(e.alpha);
                              j["x0"] = to_string(e.x0);
                          },
                          [&](const ExplicitChain& e) {
                              const auto c = to_json(e.chain);
                              j.update(c);
                          },
                          [&](const UnionOf& u) {
                              j["members"] = nlohmann::json::array();
                              for (const auto& m : u.members) {
                                  j["members"].push_back(to_json(*m));
                              }
                          },
                          [&](const BlowupOf& b) {
                              j["family"] = to_json(*b.inner);
                              j["q"] = to_string(b.q);
                          }},
               f.variant());
    return j;
}

FamilyPtr family_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("variant") || !j.at("variant").is_string()) {
        throw std::invalid_argument("family descriptor needs a \"variant\" string");
    }
    const auto variant = j.at("variant").get<std::string>();
    if (variant == "GeometricLadder") {
        return geometric_ladder(json_rational_or(j, "x0", 1), json_rational(j, "rho"));
    }
    if (variant == "SuperGeometricLadder") {
        return super_geometric_ladder(json_rational_or(j, "x0", 1), json_rational(j, "rho"));
    }
    if (variant == "ExampleFamily") {
        return example_family(json_rational(j, "alpha"), json_rational_or(j, "x0", 1));
    }
    if (variant == "ExplicitChain") {
        return explicit_chain(chain_from_json(j));
    }
    if (variant == "UnionOf") {
        if (!j.contains("members") || !j.at("members").is_array()) {
            throw std::invalid_argument("UnionOf needs a \"members\" array");
        }
        std::vector<FamilyPtr> members;
        for (const auto& m : j.at("members")) {
            members.push_back(family_from_json(m));
        }
        return union_of(std::move(members));
    }
    if (variant == "BlowupOf") {
        if (!j.contains("family")) {
            throw std::invalid_argument("BlowupOf needs a \"family\" field");
        }
        return blowup_of(family_from_json(j.at("family")), json_rational(j, "q"));
    }
    throw std::invalid_argument("unknown family variant '" + variant + "'");
}

}  // namespace porosity
