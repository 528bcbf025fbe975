#include "porosity/ideal_core.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <sstream>
#include <stdexcept>

namespace porosity::ideals {

namespace {

// kSubsetsOf[b]: family mask of all subsets of b.
constexpr std::array<std::uint32_t, 32> make_subset_table() {
    std::array<std::uint32_t, 32> table{};
    for (Subset b = 0; b < 32; ++b) {
        std::uint32_t mask = 0;
        for (Subset c = 0; c < 32; ++c) {
            if ((c & ~b) == 0) {
                mask |= 1u << c;
            }
        }
        table[b] = mask;
    }
    return table;
}

constexpr auto kSubsetsOf = make_subset_table();

bool member(std::uint32_t mask, Subset s) { return ((mask >> s) & 1u) != 0; }

template <typename Fn>
void for_each_member(std::uint32_t mask, Fn&& fn) {
    while (mask != 0) {
        const auto s = static_cast<Subset>(std::countr_zero(mask));
        fn(s);
        mask &= mask - 1;
    }
}

Subset support_of(std::uint32_t mask) {
    Subset v = 0;
    for_each_member(mask, [&](Subset s) { v |= s; });
    return v;
}

bool down_closed(std::uint32_t mask) {
    bool ok = true;
    for_each_member(mask, [&](Subset b) { ok = ok && (kSubsetsOf[b] & ~mask) == 0; });
    return ok;
}

bool union_closed(std::uint32_t mask) {
    bool ok = true;
    for_each_member(mask, [&](Subset b) {
        for_each_member(mask, [&](Subset c) { ok = ok && member(mask, b | c); });
    });
    return ok;
}

bool ideal_mask(std::uint32_t mask, Subset ground) {
    return mask != 0 && !member(mask, ground) && (mask & ~kSubsetsOf[ground]) == 0 && down_closed(mask) &&
           union_closed(mask);
}

// All ideals on `ground` that are sub-families of `within`.
std::vector<std::uint32_t> ideals_inside(std::uint32_t within, Subset ground) {
    std::vector<std::uint32_t> out;
    for (std::uint32_t sub = within;; sub = (sub - 1) & within) {
        if (ideal_mask(sub, ground)) {
            out.push_back(sub);
        }
        if (sub == 0) {
            break;
        }
    }
    return out;
}

std::uint32_t full_family(const Universe& u) {
    return u.subset_count() == 32 ? 0xFFFFFFFFu : ((1u << u.subset_count()) - 1u);
}

void record(TheoremCheck& check, UniverseTally& tally, const FamilyOfSets& f) {
    ++tally.counterexamples;
    if (check.counterexamples.size() < 8) {
        check.counterexamples.push_back(f);
    }
}

void require_exhaustive(int n, int cap = kMaxExhaustive) {
    if (n < 1 || n > cap) {
        throw std::invalid_argument("exhaustive checks need 1 <= n <= " + std::to_string(cap) + ", got " +
                                    std::to_string(n));
    }
}

}  // namespace

Universe::Universe(int size) : size_(size) {
    if (size < 1 || size > kMaxUniverse) {
        throw std::invalid_argument("universe size must be in [1, " + std::to_string(kMaxUniverse) + "]");
    }
}

FamilyOfSets::FamilyOfSets(Universe universe, const std::vector<Subset>& members) : universe_(universe) {
    for (Subset s : members) {
        if (!universe_.contains(s)) {
            throw std::invalid_argument("member " + std::to_string(s) + " is not a subset of the universe");
        }
        mask_ |= 1u << s;
    }
}

FamilyOfSets FamilyOfSets::from_mask(Universe universe, std::uint32_t mask) {
    if ((mask & ~full_family(universe)) != 0) {
        throw std::invalid_argument("family mask has members outside the universe");
    }
    return FamilyOfSets(universe, mask, true);
}

FamilyOfSets FamilyOfSets::power_set(Universe universe, Subset of) {
    if (!universe.contains(of)) {
        throw std::invalid_argument("power_set of a non-subset");
    }
    return FamilyOfSets(universe, kSubsetsOf[of], true);
}

bool FamilyOfSets::contains(Subset s) const { return s < 32 && member(mask_, s); }

int FamilyOfSets::size() const { return std::popcount(mask_); }

std::vector<Subset> FamilyOfSets::members() const {
    std::vector<Subset> out;
    for_each_member(mask_, [&](Subset s) { out.push_back(s); });
    return out;
}

Subset FamilyOfSets::support() const { return support_of(mask_); }

FamilyOfSets FamilyOfSets::intersection(const FamilyOfSets& other) const {
    return FamilyOfSets(universe_, mask_ & other.mask_, true);
}

bool is_down_set(const FamilyOfSets& f) { return down_closed(f.mask()); }

bool is_ideal(const FamilyOfSets& f, Subset ground) {
    if (!f.universe().contains(ground)) {
        throw std::invalid_argument("ground set is not a subset of the universe");
    }
    return ideal_mask(f.mask(), ground);
}

bool is_ideal(const FamilyOfSets& f, const Universe& x) {
    if (!(f.universe() == x)) {
        throw std::invalid_argument("family and ground universe differ");
    }
    return ideal_mask(f.mask(), x.full());
}

GeneratedIdeal generated_ideal(const FamilyOfSets& gamma) {
    if (gamma.empty() || !is_down_set(gamma)) {
        throw std::invalid_argument("generated_ideal needs a nonempty down set");
    }
    std::uint32_t closure = gamma.mask();
    for (bool grew = true; grew;) {
        grew = false;
        std::uint32_t next = closure;
        for_each_member(closure, [&](Subset b) { for_each_member(closure, [&](Subset c) { next |= 1u << (b | c); }); });
        if (next != closure) {
            closure = next;
            grew = true;
        }
    }
    const auto family = FamilyOfSets::from_mask(gamma.universe(), closure);
    return {family, !family.contains(gamma.support())};
}

std::vector<FamilyOfSets> maximal_ideals_within(const FamilyOfSets& gamma) {
    const Subset v = gamma.support();
    const auto ideals = ideals_inside(gamma.mask(), v);
    std::vector<FamilyOfSets> out;
    for (std::uint32_t i : ideals) {
        const bool extendable =
            std::any_of(ideals.begin(), ideals.end(), [&](std::uint32_t j) { return j != i && (i & ~j) == 0; });
        if (!extendable) {
            out.push_back(FamilyOfSets::from_mask(gamma.universe(), i));
        }
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.mask() < b.mask(); });
    return out;
}

std::vector<FamilyOfSets> gamma_maximal_ideals(const FamilyOfSets& gamma) {
    if (gamma.empty() || !is_down_set(gamma)) {
        throw std::invalid_argument("gamma_maximal_ideals needs a nonempty down set");
    }
    if (gamma.contains(gamma.support())) {
        throw std::invalid_argument("V(gamma) belongs to gamma; no ideal on V(gamma) can be gamma-maximal");
    }
    return maximal_ideals_within(gamma);
}

FamilyOfSets i_hat(const FamilyOfSets& gamma) {
    if (!gamma.empty() && is_down_set(gamma) && gamma.contains(gamma.support())) {
        return FamilyOfSets(gamma.universe(), {0});
    }
    const auto maximal = gamma_maximal_ideals(gamma);
    if (maximal.empty()) {
        throw std::logic_error("no gamma-maximal ideal found");
    }
    std::uint32_t meet = maximal.front().mask();
    for (const auto& m : maximal) {
        meet &= m.mask();
    }
    return FamilyOfSets::from_mask(gamma.universe(), meet);
}

FamilyOfSets i_star(const FamilyOfSets& gamma) {
    const Subset v = gamma.support();
    std::uint32_t out = 0;
    for_each_member(kSubsetsOf[v], [&](Subset s) {
        bool absorbs = true;
        for_each_member(gamma.mask(), [&](Subset b) { absorbs = absorbs && gamma.contains(s | b); });
        if (absorbs) {
            out |= 1u << s;
        }
    });
    return FamilyOfSets::from_mask(gamma.universe(), out);
}

std::vector<FamilyOfSets> enumerate_down_sets(const Universe& universe) {
    if (universe.size() > kMaxExhaustive) {
        throw std::invalid_argument("down-set enumeration is limited to n <= 4");
    }
    std::vector<FamilyOfSets> out;
    const std::uint64_t families = 1ull << universe.subset_count();
    for (std::uint64_t m = 0; m < families; ++m) {
        const auto mask = static_cast<std::uint32_t>(m);
        if (down_closed(mask)) {
            out.push_back(FamilyOfSets::from_mask(universe, mask));
        }
    }
    return out;
}

IdealReport ideal_report(const FamilyOfSets& gamma) {
    std::vector<FamilyOfSets> maximal;
    if (!gamma.contains(gamma.support())) {
        maximal = gamma_maximal_ideals(gamma);
    }
    auto hat = i_hat(gamma);
    auto star = i_star(gamma);
    const bool equal = hat == star;
    return {gamma, std::move(maximal), std::move(hat), std::move(star), equal};
}

namespace {

nlohmann::json members_json(const FamilyOfSets& f) {
    auto arr = nlohmann::json::array();
    for (Subset s : f.members()) {
        arr.push_back(s);
    }
    return arr;
}

}  // namespace

nlohmann::json to_json(const IdealReport& report) {
    nlohmann::json j;
    j["universe"] = report.gamma.universe().size();
    j["gamma"] = members_json(report.gamma);
    j["maximal_ideals"] = nlohmann::json::array();
    for (const auto& m : report.maximal_ideals) {
        j["maximal_ideals"].push_back(members_json(m));
    }
    j["i_hat"] = members_json(report.i_hat);
    j["i_star"] = members_json(report.i_star);
    j["equal"] = report.equal;
    return j;
}

int TheoremCheck::scanned() const {
    int total = 0;
    for (const auto& t : per_universe) {
        total += t.scanned;
    }
    return total;
}

int TheoremCheck::qualifying() const {
    int total = 0;
    for (const auto& t : per_universe) {
        total += t.qualifying;
    }
    return total;
}

int TheoremCheck::counterexample_count() const {
    int total = 0;
    for (const auto& t : per_universe) {
        total += t.counterexamples;
    }
    return total;
}

TheoremCheck check_theorem_istar_eq_ihat(int n) {
    require_exhaustive(n);
    TheoremCheck check{"istar_eq_ihat", {}, {}};
    for (int size = 1; size <= n; ++size) {
        const Universe u(size);
        UniverseTally tally{size, 0, 0, 0};
        for (const auto& gamma : enumerate_down_sets(u)) {
            ++tally.scanned;
            if (gamma.empty() || gamma.contains(gamma.support())) {
                continue;
            }
            ++tally.qualifying;
            const auto star = i_star(gamma);
            const auto hat = i_hat(gamma);
            const Subset v = gamma.support();
            if (!(star == hat) || !is_ideal(star, v) || !is_ideal(hat, v)) {
                record(check, tally, gamma);
            }
        }
        check.per_universe.push_back(tally);
    }
    return check;
}

TheoremCheck check_prime_iff_maximal(int n) {
    require_exhaustive(n);
    TheoremCheck check{"prime_iff_maximal", {}, {}};
    for (int size = 1; size <= n; ++size) {
        const Universe u(size);
        const Subset v = u.full();
        const auto everything = FamilyOfSets::power_set(u, v);
        const auto maximal = maximal_ideals_within(everything);
        UniverseTally tally{size, 0, 0, 0};
        for (std::uint32_t ideal : ideals_inside(everything.mask(), v)) {
            ++tally.scanned;
            bool prime = true;
            for (Subset a = 0; a <= v; ++a) {
                prime = prime && (member(ideal, a) || member(ideal, v & ~a));
            }
            const bool is_maximal = std::any_of(maximal.begin(), maximal.end(),
                                                [&](const FamilyOfSets& m) { return m.mask() == ideal; });
            if (prime) {
                ++tally.qualifying;
            }
            if (prime != is_maximal) {
                record(check, tally, FamilyOfSets::from_mask(u, ideal));
            }
        }
        check.per_universe.push_back(tally);
    }
    return check;
}

TheoremCheck check_maximal_ideal_existence(int n) {
    require_exhaustive(n, 3);
    TheoremCheck check{"maximal_ideal_existence", {}, {}};
    for (int size = 1; size <= n; ++size) {
        const Universe u(size);
        UniverseTally tally{size, 0, 0, 0};
        const std::uint64_t families = 1ull << u.subset_count();
        for (std::uint64_t m = 1; m < families; ++m) {
            const auto gamma = FamilyOfSets::from_mask(u, static_cast<std::uint32_t>(m));
            ++tally.scanned;
            const bool lhs = is_down_set(gamma) && !gamma.contains(gamma.support());
            if (lhs) {
                ++tally.qualifying;
            }
            const auto maximal = maximal_ideals_within(gamma);
            bool rhs = true;
            for (Subset a : gamma.members()) {
                rhs = rhs && std::any_of(maximal.begin(), maximal.end(),
                                         [&](const FamilyOfSets& i) { return i.contains(a); });
            }
            if (lhs != rhs) {
                record(check, tally, gamma);
            }
        }
        check.per_universe.push_back(tally);
    }
    return check;
}

TheoremCheck check_istar_ideal_iff(int n) {
    require_exhaustive(n);
    TheoremCheck check{"istar_ideal_iff", {}, {}};
    for (int size = 1; size <= n; ++size) {
        const Universe u(size);
        UniverseTally tally{size, 0, 0, 0};
        for (const auto& gamma : enumerate_down_sets(u)) {
            ++tally.scanned;
            if (gamma.empty()) {
                continue;
            }
            ++tally.qualifying;
            const Subset v = gamma.support();
            const auto star = i_star(gamma);
            const bool v_in_gamma = gamma.contains(v);
            const bool ok = (is_ideal(star, v) == !v_in_gamma) && (star.contains(v) == v_in_gamma) &&
                            is_down_set(star);
            if (!ok) {
                record(check, tally, gamma);
            }
        }
        check.per_universe.push_back(tally);
    }
    return check;
}

TheoremCheck check_generated_ideal_minimality(int n) {
    require_exhaustive(n, 3);
    TheoremCheck check{"generated_ideal_minimality", {}, {}};
    for (int size = 1; size <= n; ++size) {
        const Universe u(size);
        UniverseTally tally{size, 0, 0, 0};
        for (const auto& gamma : enumerate_down_sets(u)) {
            ++tally.scanned;
            if (gamma.empty()) {
                continue;
            }
            const auto generated = generated_ideal(gamma);
            if (!generated.is_ideal) {
                continue;
            }
            ++tally.qualifying;
            const Subset v = gamma.support();
            std::uint32_t meet = full_family(u);
            bool ok = is_ideal(generated.family, v) && gamma.is_subfamily_of(generated.family);
            for (std::uint32_t j : ideals_inside(kSubsetsOf[v], v)) {
                if ((gamma.mask() & ~j) != 0) {
                    continue;
                }
                meet &= j;
                ok = ok && (generated.family.mask() & ~j) == 0;
            }
            ok = ok && meet == generated.family.mask();
            if (!ok) {
                record(check, tally, gamma);
            }
        }
        check.per_universe.push_back(tally);
    }
    return check;
}

nlohmann::json to_json(const TheoremCheck& check) {
    nlohmann::json j;
    j["check"] = check.name;
    j["scanned"] = check.scanned();
    j["qualifying"] = check.qualifying();
    j["counterexamples"] = check.counterexample_count();
    j["per_universe"] = nlohmann::json::array();
    for (const auto& t : check.per_universe) {
        j["per_universe"].push_back({{"n", t.universe_size},
                                     {"scanned", t.scanned},
                                     {"qualifying", t.qualifying},
                                     {"counterexamples", t.counterexamples}});
    }
    j["first_counterexamples"] = nlohmann::json::array();
    for (const auto& f : check.counterexamples) {
        j["first_counterexamples"].push_back(members_json(f));
    }
    return j;
}

std::string format_family(const FamilyOfSets& f) {
    std::ostringstream out;
    out << '{';
    bool first_set = true;
    for (Subset s : f.members()) {
        out << (first_set ? "" : ",") << '{';
        first_set = false;
        bool first = true;
        for (int e = 0; e < f.universe().size(); ++e) {
            if ((s >> e) & 1u) {
                out << (first ? "" : ",") << e;
                first = false;
            }
        }
        out << '}';
    }
    out << '}';
    return out.str();
}

}  // namespace porosity::ideals
