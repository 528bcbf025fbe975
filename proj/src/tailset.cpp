#include "porosity/tailset.hpp"

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

GapResult gap_scan(const std::vector<Block>& comps, const Rational& eps, const Rational& h) {
    Rational cur = h;
    Rational interior = 0;
    for (const auto& comp : comps) {
        if (comp.lo >= h) {
            continue;
        }
        const Rational top = comp.hi < h ? comp.hi : h;
        if (cur - top > interior) {
            interior = cur - top;
        }
        cur = comp.lo;
    }
    if (eps == 0) {
        return {cur > interior ? cur : interior, true};
    }
    const Rational bottom = cur > eps ? Rational(cur - eps) : Rational(0);
    Rational value = interior > bottom ? interior : bottom;
    const Rational floor = eps < cur ? eps : cur;
    if (floor > value) {
        value = floor;
    }
    // anything hidden in (0, eps] sits below cur, so it cannot beat a known gap of length >= cur
    return {value, interior >= cur};
}

void collect_terms(const TailFamily& f, const Rational& scale, std::vector<AsymptoticTerm>& out) {
    using Kind = AsymptoticTerm::Kind;
    std::visit(overloaded{[&](const GeometricLadder& g) {
                              out.push_back({Kind::Geometric, scale, g.rho, {g.x0}});
                          },
                          [&](const SuperGeometricLadder& g) {
                              out.push_back({Kind::SuperGeometric, scale, g.rho, {g.x0}});
                          },
                          [&](const ExampleFamily& e) {
                              out.push_back({Kind::Example, scale, e.alpha, {e.x0}});
                          },
                          [&](const ExplicitChain&) {},
                          [&](const UnionOf& u) {
                              for (const auto& m : u.members) {
                                  collect_terms(*m, scale, out);
                              }
                          },
                          [&](const BlowupOf& b) { collect_terms(*b.inner, scale * b.q, out); }},
               f.variant());
}

TailCertificate cluster_certificate(const AsymptoticTerm& term, const Rational& s2) {
    TailCertificate c;
    c.kind = CertificateKind::EventuallyPeriodic;
    const auto& x = term.offsets;
    Rational group_top = x.front();
    for (std::size_t i = 0; i + 1 < x.size(); ++i) {
        const Rational d = x[i + 1] / x[i];
        if (s2 * d > 1) {
            continue;  // neighbours overlap after blow-up
        }
        c.beta_pattern.emplace_back(Rational(s2 * group_top / x[i]));
        c.gamma_pattern.emplace_back(Rational(1 / (s2 * d)));
        group_top = x[i + 1];
    }
    c.beta_pattern.emplace_back(Rational(s2 * group_top / x.back()));
    c.gamma_pattern.push_back(ExtRational::infinity());

    c.limsup_beta = *std::max_element(c.beta_pattern.begin(), c.beta_pattern.end());
    c.limsup_gamma = ExtRational::infinity();
    c.gamma_tends_to_infinity = c.beta_pattern.size() == 1;
    c.note = "cluster of " + std::to_string(x.size()) + " super-geometric ladders, " +
             std::to_string(c.beta_pattern.size()) + " component(s) per period";
    return c;
}

}  // namespace

std::string to_string(CertificateKind kind) {
    switch (kind) {
        case CertificateKind::ExplicitLimit:
            return "ExplicitLimit";
        case CertificateKind::EventuallyPeriodic:
            return "EventuallyPeriodic";
        case CertificateKind::Unknown:
            break;
    }
    return "Unknown";
}

std::optional<ExtRational> TailCertificate::window_liminf(int M) const {
    if (M < 0) {
        throw std::invalid_argument("window size M must be nonnegative");
    }
    if (!known() || finite_chain) {
        return std::nullopt;
    }
    if (gamma_tends_to_infinity) {
        return ExtRational::infinity();
    }
    if (window) {
        if (window->base.is_infinite()) {
            return ExtRational::infinity();
        }
        return ExtRational(Rational(window->base.value() * pow(window->growth, M)));
    }
    if (!gamma_pattern.empty()) {
        const std::size_t n = gamma_pattern.size();
        std::optional<ExtRational> best;
        for (std::size_t start = 0; start < n; ++start) {
            ExtRational m = gamma_pattern[start];
            for (int j = 1; j <= M; ++j) {
                m = max(m, gamma_pattern[(start + static_cast<std::size_t>(j)) % n]);
            }
            best = best ? min(*best, m) : m;
        }
        return best;
    }
    return std::nullopt;
}

std::optional<Rational> TailCertificate::porosity() const {
    if (!known()) {
        return std::nullopt;
    }
    if (finite_chain) {
        return Rational(0);
    }
    if (limsup_gamma.is_infinite()) {
        return Rational(1);
    }
    return Rational(1 - 1 / limsup_gamma.value());
}

nlohmann::json to_json(const TailCertificate& c) {
    nlohmann::json j;
    j["kind"] = to_string(c.kind);
    j["note"] = c.note;
    if (!c.known()) {
        return j;
    }
    j["finite_chain"] = c.finite_chain;
    if (!c.finite_chain) {
        j["limsup_beta"] = to_string(c.limsup_beta);
        j["limsup_gamma"] = to_string(c.limsup_gamma);
        j["gamma_tends_to_infinity"] = c.gamma_tends_to_infinity;
    }
    if (c.window) {
        j["window"] = {{"base", to_string(c.window->base)}, {"growth", to_string(c.window->growth)}};
    }
    if (c.kind == CertificateKind::EventuallyPeriodic) {
        auto render = [](const std::vector<ExtRational>& v) {
            auto arr = nlohmann::json::array();
            for (const auto& x : v) {
                arr.push_back(to_string(x));
            }
            return arr;
        };
        j["beta_pattern"] = render(c.beta_pattern);
        j["gamma_pattern"] = render(c.gamma_pattern);
    }
    if (auto p = c.porosity()) {
        j["p_plus"] = to_string(*p);
    }
    return j;
}

GapResult lambda_gap(const Chain& c, const Rational& h) {
    if (h <= 0 || h > c.upper()) {
        throw std::invalid_argument("lambda_gap needs 0 < h <= upper, got h = " + to_string(h));
    }
    return gap_scan(normalize(c.blocks()), c.horizon(), h);
}

std::vector<ProbePoint> probe_ratios(const Chain& c) {
    const auto comps = normalize(c.blocks());
    std::vector<ProbePoint> out;
    for (const auto& comp : comps) {
        if (comp.lo <= c.horizon() && c.horizon() > 0) {
            continue;
        }
        auto g = gap_scan(comps, c.horizon(), comp.lo);
        out.push_back({comp.lo, Rational(g.value / comp.lo), g.valid});
    }
    return out;
}

PorosityProfile porosity_profile(const TailFamily& f, int depth) {
    if (!f.has_zero_accumulation()) {
        throw std::invalid_argument("porosity profile needs a family accumulating at 0");
    }
    PorosityProfile p;
    p.probes = probe_ratios(f.expand(depth));
    p.certificate = profile_certificate(f);
    p.certified_p_plus = p.certificate.porosity();
    return p;
}

namespace {

RatioProfile ratios_of(std::vector<Block> comps) {
    RatioProfile r;
    for (std::size_t i = 0; i < comps.size(); ++i) {
        r.betas.emplace_back(comps[i].hi / comps[i].lo);
        if (i + 1 < comps.size()) {
            r.gammas.emplace_back(comps[i].lo / comps[i + 1].hi);
        }
    }
    r.components = std::move(comps);
    return r;
}

}  // namespace

RatioProfile ratio_profile(const Chain& c) {
    if (c.has_points()) {
        throw std::invalid_argument("ratio profile needs interval components; blow the chain up first");
    }
    auto comps = normalize(c.blocks());
    std::erase_if(comps, [&](const Block& b) { return b.lo < c.horizon(); });
    return ratios_of(std::move(comps));
}

RatioProfile ratio_profile(const TailFamily& f, int depth) {
    auto r = ratios_of(cc1_components(f.expand(depth)));
    r.certificate = profile_certificate(f);
    return r;
}

std::optional<std::size_t> first_equivalence_violation(const SequencePair& sp) {
    if (sp.tau.size() != sp.h.size()) {
        throw std::invalid_argument("sequence pair lengths differ");
    }
    for (std::size_t n = 0; n < sp.tau.size(); ++n) {
        if (sp.c1 * sp.tau[n] > sp.h[n] || sp.h[n] > sp.c2 * sp.tau[n]) {
            return n;
        }
    }
    return std::nullopt;
}

bool check_equivalence(const SequencePair& sp) { return !first_equivalence_violation(sp).has_value(); }

std::string to_string(AsymptoticTerm::Kind kind) {
    switch (kind) {
        case AsymptoticTerm::Kind::Geometric:
            return "GeometricLadder";
        case AsymptoticTerm::Kind::SuperGeometric:
            return "SuperGeometricLadder";
        case AsymptoticTerm::Kind::Example:
            return "ExampleFamily";
        case AsymptoticTerm::Kind::Cluster:
            break;
    }
    return "Cluster";
}

std::vector<AsymptoticTerm> asymptotic_terms(const TailFamily& f) {
    std::vector<AsymptoticTerm> raw;
    collect_terms(f, 1, raw);

    std::vector<AsymptoticTerm> unique;
    for (auto& t : raw) {
        if (std::find(unique.begin(), unique.end(), t) == unique.end()) {
            unique.push_back(std::move(t));
        }
    }

    std::vector<AsymptoticTerm> out;
    std::vector<bool> used(unique.size(), false);
    for (std::size_t i = 0; i < unique.size(); ++i) {
        if (used[i]) {
            continue;
        }
        AsymptoticTerm t = unique[i];
        if (t.kind == AsymptoticTerm::Kind::SuperGeometric) {
            for (std::size_t j = i + 1; j < unique.size(); ++j) {
                const auto& u = unique[j];
                if (!used[j] && u.kind == t.kind && u.ratio == t.ratio && u.scale == t.scale) {
                    t.offsets.push_back(u.offsets.front());
                    used[j] = true;
                }
            }
            if (t.offsets.size() > 1) {
                std::sort(t.offsets.begin(), t.offsets.end(), std::greater<>());
                t.kind = AsymptoticTerm::Kind::Cluster;
            }
        }
        out.push_back(std::move(t));
    }
    return out;
}

long example_merge_depth(const Rational& alpha, const Rational& scale) {
    const Rational s2 = scale * scale;
    long k = 0;
    Rational power = alpha;
    while (s2 * power > 1) {
        ++k;
        power *= alpha;
    }
    return k;
}

TailCertificate term_certificate(const AsymptoticTerm& term, const Rational& extra) {
    using Kind = AsymptoticTerm::Kind;
    const Rational s = term.scale * extra;
    const Rational s2 = s * s;
    TailCertificate c;
    c.kind = CertificateKind::ExplicitLimit;
    switch (term.kind) {
        case Kind::Geometric: {
            if (s2 * term.ratio > 1) {
                c.finite_chain = true;
                c.note = "geometric ladder at scale " + to_string(s) + ": s^2 rho > 1, the blow-up fills (0, t)";
                return c;
            }
            const Rational g = 1 / (s2 * term.ratio);
            c.limsup_beta = s2;
            c.limsup_gamma = g;
            c.window = WindowLaw{g, 1};
            c.note = "geometric ladder at scale " + to_string(s) + ": beta = s^2, gamma = 1/(s^2 rho)";
            return c;
        }
        case Kind::SuperGeometric:
            c.limsup_beta = s2;
            c.limsup_gamma = ExtRational::infinity();
            c.gamma_tends_to_infinity = true;
            c.window = WindowLaw{ExtRational::infinity(), 1};
            c.note = "super-geometric ladder at scale " + to_string(s) + ": beta = s^2, gamma -> inf";
            return c;
        case Kind::Example: {
            const long k = example_merge_depth(term.ratio, s);
            c.limsup_beta = Rational(s2 * pow(term.ratio, -k * (k + 1) / 2));
            c.limsup_gamma = ExtRational::infinity();
            c.window = WindowLaw{Rational(pow(term.ratio, -(k + 1)) / s2), Rational(1 / term.ratio)};
            c.note = "example family at scale " + to_string(s) + ": leading " + std::to_string(k) +
                     " gap(s) of each block merge";
            return c;
        }
        case Kind::Cluster:
            return cluster_certificate(term, s2);
    }
    return c;
}

TailCertificate profile_certificate(const TailFamily& f, const Rational& extra) {
    const auto terms = asymptotic_terms(f);
    if (terms.size() == 1) {
        return term_certificate(terms.front(), extra);
    }
    TailCertificate c;
    c.note = terms.empty() ? "finite set: no tail" : std::to_string(terms.size()) + " asymptotic terms, no joint closed form";
    return c;
}

}  // namespace porosity

namespace porosity {

std::string to_string(Trend trend) {
    switch (trend) {
        case Trend::MonotoneIncreasing:
            return "monotone-increasing";
        case Trend::Bounded:
            return "bounded";
        case Trend::Oscillating:
            break;
    }
    return "oscillating";
}

Trend classify_trend(const std::vector<Rational>& values) {
    if (values.size() < 2) {
        return Trend::Bounded;
    }
    const auto mid = values.begin() + static_cast<std::ptrdiff_t>(values.size() / 2);
    const auto first_max = *std::max_element(values.begin(), mid);
    const auto second_min = *std::min_element(mid, values.end());
    const auto second_max = *std::max_element(mid, values.end());
    if (second_min > first_max) {
        return Trend::MonotoneIncreasing;
    }
    if (second_max <= first_max) {
        return Trend::Bounded;
    }
    return Trend::Oscillating;
}

}  // namespace porosity
