#include "porosity/blowup.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>

#include "porosity/tailset.hpp"

namespace porosity {

void require_blowup_factor(const Rational& q) {
    if (q <= 1) {
        throw std::invalid_argument("blow-up factor q must exceed 1, got " + to_string(q));
    }
}

Block blow_up_block(const Block& b, const Rational& q) {
    require_blowup_factor(q);
    if (b.lo <= 0) {
        throw std::invalid_argument("cannot blow up a block touching 0");
    }
    return {Rational(b.lo / q), Rational(b.hi * q)};
}

Chain blow_up_chain(const Chain& c, const Rational& q) {
    require_blowup_factor(q);
    std::vector<Block> blown;
    blown.reserve(c.size());
    for (const auto& b : c.blocks()) {
        blown.push_back(blow_up_block(b, q));
    }
    return Chain::normalized(std::move(blown), c.upper() * q, c.horizon() * q);
}

std::vector<Block> cc1_components(const Chain& c) {
    if (c.has_points()) {
        throw std::invalid_argument("Cc1 needs a blown-up chain; this one holds isolated points");
    }
    auto comps = normalize(c.blocks());
    std::erase_if(comps, [&](const Block& b) { return b.lo < c.horizon() || b.hi > 1; });
    return comps;
}

InclusionReport check_inclusion_at_scale(const TailFamily& a, const TailFamily& b, const Rational& t,
                                         const Rational& q, const Rational& c, int depth) {
    require_blowup_factor(q);
    if (t <= 0 || c <= 0) {
        throw std::invalid_argument("inclusion check needs t > 0 and c > 0");
    }
    const Chain ca = a.expand(depth);
    const Chain cb = b.expand(depth);
    const Rational eps = std::max(ca.horizon(), cb.horizon());

    InclusionReport r;
    r.precondition_holds = is_subset(restrict_to(cb.blocks(), eps, t), restrict_to(ca.blocks(), eps, t));
    r.window_lo = q * eps;
    r.window_hi = c * t;
    if (!r.precondition_holds) {
        r.detail = "precondition fails: (0,t) n B is not inside (0,t) n A above the horizon";
        return r;
    }
    const Chain ba = blow_up_chain(ca, q);
    const Chain bb = blow_up_chain(cb, q);
    const auto inner = restrict_to(bb.blocks(), r.window_lo, r.window_hi);
    const auto outer = restrict_to(ba.blocks(), r.window_lo, r.window_hi);
    r.inclusion_holds = is_subset(inner, outer);
    if (!r.inclusion_holds) {
        for (const auto& blk : inner) {
            if (!is_subset({blk}, outer)) {
                r.detail = "B(q) piece " + to_string(blk) + " missing from A(q)";
                break;
            }
        }
    }
    return r;
}

InclusionReport check_inclusion_lemma(const TailFamily& a, const TailFamily& b, const Rational& t, const Rational& q,
                                      int depth) {
    return check_inclusion_at_scale(a, b, t, q, Rational(1 / q), depth);
}

std::optional<CoveringBlowup> find_covering_blowup(const TailFamily& f, int depth) {
    const auto cert = profile_certificate(f);
    if (cert.known() && !cert.finite_chain && cert.limsup_gamma.is_infinite()) {
        return std::nullopt;  // strongly porous: no blow-up fills a neighbourhood
    }
    const Chain chain = f.expand(depth);
    std::vector<ProbePoint> valid;
    for (auto& p : probe_ratios(chain)) {
        if (p.valid) {
            valid.push_back(std::move(p));
        }
    }
    std::vector<Rational> ratios;
    for (const auto& p : valid) {
        ratios.push_back(p.ratio);
    }
    if (ratios.size() >= 4 && classify_trend(ratios) == Trend::MonotoneIncreasing) {
        return std::nullopt;
    }

    Rational r = 0;
    const std::size_t window = std::min<std::size_t>(10, ratios.size());
    for (std::size_t i = ratios.size() - window; i < ratios.size(); ++i) {
        r = std::max(r, ratios[i]);
    }
    if (r >= 1) {
        return std::nullopt;
    }
    CoveringBlowup out;
    out.s = (1 + r) / 2;
    out.q = 1 / (1 - out.s);
    out.covered_from = out.q * chain.horizon();

    const auto comps = normalize(chain.blocks());
    const Chain blown = blow_up_chain(chain, out.q);
    for (std::size_t i = 0; i < comps.size(); ++i) {
        const Rational& t = comps[i].hi;
        const bool quiet = std::all_of(valid.begin(), valid.end(), [&](const ProbePoint& p) {
            return p.h > t || p.ratio < out.s;
        });
        if (!quiet || t <= out.covered_from) {
            continue;
        }
        const bool covered = std::any_of(blown.blocks().begin(), blown.blocks().end(), [&](const Block& b) {
            return !b.is_point() && b.lo <= out.covered_from && b.hi >= t;
        });
        if (covered) {
            out.t = t;
            return out;
        }
    }
    return std::nullopt;
}

Chain random_chain(std::mt19937_64& rng, int max_blocks) {
    auto pick = [&](int lo, int hi) { return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1)); };
    const int n = pick(1, std::max(1, max_blocks));
    std::vector<Block> blocks;
    Rational x = 1;
    for (int i = 0; i < n; ++i) {
        if (rng() % 2 == 0) {
            blocks.push_back(Block::point(x));
            x *= ratio(pick(1, 7), 8);
        } else {
            Rational lo = x * ratio(pick(1, 7), 8);
            blocks.push_back(Block::interval(lo, x));
            x = rng() % 4 == 0 ? lo : Rational(lo * ratio(pick(1, 7), 8));
        }
    }
    Rational eps = rng() % 3 == 0 ? Rational(0) : blocks.back().lo;
    return Chain(std::move(blocks), 1, std::move(eps));
}

int BlowupSweep::total_violations() const {
    int total = 0;
    for (const auto& p : properties) {
        total += p.violations;
    }
    return total;
}

namespace {

enum Law {
    kContainsOriginal,
    kMonotoneInSet,
    kMonotoneInQ,
    kInclusionLemma,
    kInclusionExactness,
    kPointComponentBeta,
    kComponentCountBound,
    kCompositionContains,
    kCompositionEqual,
    kLawCount
};

constexpr std::array<const char*, kLawCount> kLawNames = {
    "E within E(q) when 0 not in E",
    "E within F implies E(q) within F(q)",
    "q1 <= q2 implies E(q1) within E(q2)",
    "inclusion at scale 1/q",
    "inclusion fails above scale 1/q (B = [t, 2t), A empty)",
    "component holding a blown point has beta >= q^2",
    "i-th Cc1 component a_i satisfies a_i q^(2i) <= 1",
    "E(q1)(q2) contains E(q1 q2)",
    "E(q1)(q2) equals E(q1 q2) above the horizon",
};

std::vector<Block> above(const Chain& c, const Rational& from) {
    return restrict_to(c.blocks(), from, c.upper() + 1);
}

}  // namespace

BlowupSweep blowup_property_sweep(std::uint64_t seed, int trials) {
    BlowupSweep sweep;
    sweep.seed = seed;
    sweep.trials = trials;
    for (const char* name : kLawNames) {
        sweep.properties.push_back({name, 0, 0});
    }
    auto tally = [&](Law law, bool ok) {
        ++sweep.properties[law].checked;
        if (!ok) {
            ++sweep.properties[law].violations;
        }
    };

    std::mt19937_64 rng(seed);
    const std::array<Rational, 4> factors = {ratio(5, 4), ratio(3, 2), Rational(2), Rational(5)};

    for (int trial = 0; trial < trials; ++trial) {
        const Chain e = random_chain(rng, 14);
        const std::size_t i1 = rng() % factors.size();
        const std::size_t i2 = i1 + rng() % (factors.size() - i1);
        const Rational& q = factors[i1];
        const Rational& q2 = factors[i2];
        const Chain eq = blow_up_chain(e, q);

        tally(kContainsOriginal, is_subset(above(e, eq.horizon()), eq.blocks()));

        const Chain g = random_chain(rng, 6);
        std::vector<Block> both(e.blocks());
        both.insert(both.end(), g.blocks().begin(), g.blocks().end());
        const Chain f = Chain::normalized(std::move(both), 1, std::max(e.horizon(), g.horizon()));
        const Chain fq = blow_up_chain(f, q);
        tally(kMonotoneInSet, is_subset(above(eq, fq.horizon()), fq.blocks()));

        const Chain eq2 = blow_up_chain(e, q2);
        tally(kMonotoneInQ, is_subset(above(eq, eq2.horizon()), eq2.blocks()));

        {
            const Chain a = random_chain(rng, 10);
            std::vector<Block> sub;
            for (const auto& blk : a.blocks()) {
                if (rng() % 2 == 0) {
                    continue;
                }
                if (!blk.is_point() && rng() % 2 == 0) {
                    const Rational mid = (blk.lo + blk.hi) / 2;
                    sub.push_back(rng() % 2 == 0 ? Block::point(mid) : Block::interval(mid, blk.hi));
                } else {
                    sub.push_back(blk);
                }
            }
            const std::array<Rational, 3> ts = {Rational(1), ratio(1, 2), ratio(1, 5)};
            const Rational& t = ts[rng() % ts.size()];
            const auto fa = explicit_chain(Chain(a.blocks(), 1, 0));
            const auto fb = explicit_chain(Chain::normalized(sub, 1, 0));
            const auto rep = check_inclusion_lemma(*fa, *fb, t, q, 1000);
            tally(kInclusionLemma, rep.precondition_holds && rep.inclusion_holds);

            const Rational t2 = t;
            const auto fb2 = explicit_chain(Chain({Block::interval(t2, 2 * t2), Block::point(t2)}, 2 * t2, 0));
            const auto fa2 = explicit_chain(Chain({}, 2 * t2, 0));
            const Rational c = (1 / q) * ratio(9, 8);
            const auto exact = check_inclusion_at_scale(*fa2, *fb2, t2, q, c, 1000);
            tally(kInclusionExactness, exact.precondition_holds && !exact.inclusion_holds);
        }

        const Rational q_sq = q * q;
        for (const auto& comp : eq.blocks()) {
            if (comp.lo < eq.horizon()) {
                continue;
            }
            const bool from_point = std::any_of(e.blocks().begin(), e.blocks().end(), [&](const Block& blk) {
                return blk.is_point() && blow_up_block(blk, q).within(comp);
            });
            if (from_point) {
                tally(kPointComponentBeta, comp.hi >= q_sq * comp.lo);
            }
        }

        Rational power = q_sq;
        for (const auto& comp : cc1_components(eq)) {
            tally(kComponentCountBound, comp.lo * power <= 1);
            power *= q_sq;
        }

        const Chain twice = blow_up_chain(eq, q2);
        const Chain once = blow_up_chain(e, q * q2);
        tally(kCompositionContains, is_subset(above(once, once.horizon()), twice.blocks()));
        tally(kCompositionEqual, above(once, once.horizon()) == above(twice, twice.horizon()));
    }
    return sweep;
}

}  // namespace porosity
