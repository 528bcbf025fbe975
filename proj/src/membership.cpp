#include "porosity/membership.hpp"

#include <algorithm>
#include <functional>

#include "porosity/blowup.hpp"

namespace porosity {

namespace {

using Kind = AsymptoticTerm::Kind;
using ClaimField = std::optional<bool> ClassClaims::*;

ClassClaims term_claims(const AsymptoticTerm& t) {
    switch (t.kind) {
        case Kind::Geometric:
            return {false, false, false, false};
        case Kind::Example:
            return {true, false, false, true};
        case Kind::SuperGeometric:
        case Kind::Cluster:
            break;
    }
    return {true, true, true, true};
}

// CSP within I(CSP) within I-hat(SP) within SP.
void close_under_hierarchy(ClassClaims& c) {
    for (int pass = 0; pass < 2; ++pass) {
        if (c.csp == true) c.i_csp = true;
        if (c.i_csp == true) c.ihat_sp = true;
        if (c.ihat_sp == true) c.sp = true;
        if (c.sp == false) c.ihat_sp = false;
        if (c.ihat_sp == false) c.i_csp = false;
        if (c.i_csp == false) c.csp = false;
    }
}

ClassClaims combine(const std::vector<AsymptoticTerm>& terms) {
    if (terms.size() == 1) {
        return term_claims(terms.front());
    }
    ClassClaims c;
    auto all_true = [&](ClaimField field) {
        return std::all_of(terms.begin(), terms.end(), [&](const auto& t) { return term_claims(t).*field == true; });
    };
    auto any_false = [&](ClaimField field) {
        return std::any_of(terms.begin(), terms.end(), [&](const auto& t) { return term_claims(t).*field == false; });
    };
    // I(CSP) and I-hat(SP) are ideals; SP and CSP are only closed under subsets.
    for (ClaimField field : {&ClassClaims::i_csp, &ClassClaims::ihat_sp}) {
        if (any_false(field)) {
            c.*field = false;
        } else if (all_true(field)) {
            c.*field = true;
        }
    }
    for (ClaimField field : {&ClassClaims::sp, &ClassClaims::csp}) {
        if (any_false(field)) {
            c.*field = false;
        }
    }
    return c;
}

TailCertificate vacuous_certificate() {
    TailCertificate c;
    c.kind = CertificateKind::ExplicitLimit;
    c.limsup_beta = 1;
    c.limsup_gamma = ExtRational::infinity();
    c.gamma_tends_to_infinity = true;
    c.note = "no points accumulate at 0";
    return c;
}

/// Certificate of the first term whose own claim matches the verdict.
TailCertificate decisive_certificate(const std::vector<AsymptoticTerm>& terms, ClaimField field, bool value) {
    if (terms.empty()) {
        return vacuous_certificate();
    }
    std::size_t pick = 0;
    for (std::size_t i = 0; i < terms.size(); ++i) {
        if (term_claims(terms[i]).*field == value) {
            pick = i;
            break;
        }
    }
    auto cert = term_certificate(terms[pick]);
    if (terms.size() > 1) {
        cert.note = "member " + std::to_string(pick + 1) + " of " + std::to_string(terms.size()) + ": " + cert.note;
    }
    return cert;
}

Verdict definite(bool value, TailCertificate cert, std::string note) {
    Verdict v;
    v.definite = true;
    v.value = value;
    v.certificate = std::move(cert);
    v.note = std::move(note);
    return v;
}

Verdict empirical(bool value, int depth, Trend trend, std::string note) {
    Verdict v;
    v.value = value;
    v.depth = depth;
    v.trend = trend;
    v.note = std::move(note);
    return v;
}

void require_accumulation(const TailFamily& f) {
    if (!f.has_zero_accumulation()) {
        throw std::invalid_argument("this test needs a family accumulating at 0");
    }
}

void require_depth(int depth) {
    if (depth < 1) {
        throw std::invalid_argument("depth must be at least 1");
    }
}

std::vector<Rational> sorted_scales(const std::vector<Rational>& q_list) {
    if (q_list.empty()) {
        throw std::invalid_argument("q list is empty");
    }
    std::vector<Rational> qs(q_list);
    for (const auto& q : qs) {
        require_blowup_factor(q);
    }
    std::sort(qs.begin(), qs.end());
    qs.erase(std::unique(qs.begin(), qs.end()), qs.end());
    return qs;
}

struct Sampled {
    ScaleSample sample;
    std::vector<Rational> betas;
    std::vector<Rational> gammas;
    std::vector<Block> components;
};

Sampled sample_at(const TailFamily& f, const Chain& base, const Rational& q) {
    Sampled s;
    s.sample.q = q;
    s.components = cc1_components(blow_up_chain(base, q));
    s.sample.components = s.components.size();
    for (std::size_t i = 0; i < s.components.size(); ++i) {
        s.betas.emplace_back(s.components[i].hi / s.components[i].lo);
        if (i + 1 < s.components.size()) {
            s.gammas.emplace_back(s.components[i].lo / s.components[i + 1].hi);
        }
    }
    if (!s.betas.empty()) {
        const auto half = s.betas.begin() + static_cast<std::ptrdiff_t>(s.betas.size() / 2);
        s.sample.observed_beta_max = *std::max_element(half, s.betas.end());
    }
    s.sample.certificate = profile_certificate(f, q);
    return s;
}

std::vector<Rational> window_maxima(const std::vector<Rational>& gammas, int M) {
    std::vector<Rational> out;
    const auto width = static_cast<std::size_t>(M) + 1;
    for (std::size_t n = 0; n + width <= gammas.size(); ++n) {
        out.push_back(*std::max_element(gammas.begin() + static_cast<std::ptrdiff_t>(n),
                                        gammas.begin() + static_cast<std::ptrdiff_t>(n + width)));
    }
    return out;
}

bool certified_beta_bounded(const TailCertificate& c) {
    return c.known() && !c.finite_chain && c.limsup_beta.is_finite();
}

std::optional<Rational> geometric_witness(const std::vector<AsymptoticTerm>& terms) {
    for (const auto& t : terms) {
        if (t.kind == Kind::Geometric) {
            const Rational q = 1 / (t.scale * t.ratio);
            return q > 1 ? q : Rational(2);
        }
    }
    return std::nullopt;
}

/// Smallest integer q >= 2 merging every neighbour inside each cluster.
Rational cluster_csp_scale(const AsymptoticTerm& t) {
    Rational q = 2;
    for (;; q += 1) {
        const Rational s2 = (t.scale * q) * (t.scale * q);
        bool merged = true;
        for (std::size_t i = 0; i + 1 < t.offsets.size(); ++i) {
            merged = merged && s2 * t.offsets[i + 1] / t.offsets[i] > 1;
        }
        if (merged) {
            return q;
        }
    }
}

nlohmann::json opt_json(const std::optional<Rational>& r) { return r ? nlohmann::json(to_string(*r)) : nlohmann::json(); }

}  // namespace

std::string to_string(const Verdict& v) {
    if (v.definite) {
        return std::string("Definite(") + (v.value ? "true" : "false") + ")";
    }
    return std::string("Empirical(") + (v.value ? "true" : "false") + " at depth " + std::to_string(v.depth) + ", " +
           to_string(v.trend) + ")";
}

nlohmann::json to_json(const Verdict& v) {
    nlohmann::json j;
    j["kind"] = v.definite ? "Definite" : "Empirical";
    j["value"] = v.value;
    if (v.definite) {
        j["certificate"] = to_json(v.certificate);
    } else {
        j["depth"] = v.depth;
        j["trend"] = to_string(v.trend);
    }
    j["note"] = v.note;
    return j;
}

ClassClaims certified_claims(const TailFamily& f) {
    const auto terms = asymptotic_terms(f);
    if (terms.empty()) {
        return {true, true, true, true};
    }
    ClassClaims c = combine(terms);
    close_under_hierarchy(c);
    return c;
}

nlohmann::json to_json(const MembershipReport& r) {
    nlohmann::json j;
    j["test"] = r.test;
    j["verdict"] = to_json(r.verdict);
    if (!r.samples.empty()) {
        j["samples"] = nlohmann::json::array();
        for (const auto& s : r.samples) {
            nlohmann::json row;
            row["q"] = to_string(s.q);
            row["components"] = s.components;
            row["observed_beta_max"] = opt_json(s.observed_beta_max);
            row["certificate"] = to_json(s.certificate);
            if (s.window_M) {
                row["window_M"] = *s.window_M;
            }
            row["pass"] = s.pass;
            j["samples"].push_back(row);
        }
    }
    if (r.M) {
        j["M"] = *r.M;
    }
    if (r.q0) {
        j["q0"] = to_string(*r.q0);
    }
    if (r.witness_q) {
        j["witness_q"] = to_string(*r.witness_q);
    }
    if (!r.witness_ladder.empty()) {
        j["witness_ladder"] = nlohmann::json::array();
        for (const auto& x : r.witness_ladder) {
            j["witness_ladder"].push_back(to_string(x));
        }
    }
    return j;
}

MembershipReport is_sp(const TailFamily& f, int depth) {
    require_accumulation(f);
    require_depth(depth);
    MembershipReport r;
    r.test = "SP";
    const auto claims = certified_claims(f);
    if (claims.sp) {
        r.verdict = definite(*claims.sp, decisive_certificate(asymptotic_terms(f), &ClassClaims::sp, *claims.sp),
                             *claims.sp ? "gap ratios a_n/b_n -> 0" : "certified limsup lambda/h < 1");
        return r;
    }
    std::vector<Rational> ratios;
    for (const auto& p : probe_ratios(f.expand(depth))) {
        if (p.valid) {
            ratios.push_back(p.ratio);
        }
    }
    const Trend trend = classify_trend(ratios);
    r.verdict = empirical(trend == Trend::MonotoneIncreasing, depth, trend, "trend of lambda/h at probe points");
    return r;
}

MembershipReport test_ihat_sp(const TailFamily& f, const std::vector<Rational>& q_list, int depth) {
    require_accumulation(f);
    require_depth(depth);
    const auto qs = sorted_scales(q_list);
    const Chain base = f.expand(depth);
    MembershipReport r;
    r.test = "Ihat_SP";
    Trend last_trend = Trend::Bounded;
    for (const auto& q : qs) {
        auto s = sample_at(f, base, q);
        if (s.sample.certificate.known()) {
            s.sample.pass = certified_beta_bounded(s.sample.certificate);
        } else {
            last_trend = classify_trend(s.betas);
            s.sample.pass = s.components.size() >= 4 && last_trend != Trend::MonotoneIncreasing;
        }
        r.samples.push_back(std::move(s.sample));
    }

    const auto terms = asymptotic_terms(f);
    const auto claims = certified_claims(f);
    if (claims.ihat_sp) {
        const bool value = *claims.ihat_sp;
        if (!value) {
            r.witness_q = geometric_witness(terms);
        }
        r.verdict = definite(value, decisive_certificate(terms, &ClassClaims::ihat_sp, value),
                             value ? "Cc1 E(q) infinite with bounded beta for every q > 1"
                                   : "some q gives a finite Cc1 E(q) or unbounded beta");
        return r;
    }
    const bool all_pass = std::all_of(r.samples.begin(), r.samples.end(), [](const auto& s) { return s.pass; });
    r.verdict = empirical(all_pass, depth, last_trend, "beta trend over the sampled q");
    return r;
}

MembershipReport test_csp(const TailFamily& f, int depth) {
    require_depth(depth);
    MembershipReport r;
    r.test = "CSP";
    const auto terms = asymptotic_terms(f);
    const auto claims = certified_claims(f);

    if (claims.csp) {
        const bool value = *claims.csp;
        r.verdict = definite(value, decisive_certificate(terms, &ClassClaims::csp, value),
                             value ? "covered by a ladder with successive ratios -> 0"
                                   : "every covering ladder has ratios bounded below infinitely often");
        if (value && terms.size() == 1) {
            const auto& t = terms.front();
            const Rational q = t.kind == Kind::Cluster ? cluster_csp_scale(t) : Rational(2);
            r.witness_q = q;
            const auto comps = cc1_components(blow_up_chain(f.expand(depth), q));
            for (std::size_t i = 0; i < comps.size() && i < 8; ++i) {
                r.witness_ladder.push_back(comps[i].lo);
            }
        }
        return r;
    }
    const auto s = sample_at(f, f.expand(depth), 2);
    const Trend trend = classify_trend(s.gammas);
    const bool value = trend == Trend::MonotoneIncreasing && classify_trend(s.betas) != Trend::MonotoneIncreasing;
    r.verdict = empirical(value, depth, trend, "gamma trend of Cc1 E(2)");
    return r;
}

MembershipReport test_i_csp(const TailFamily& f, const std::vector<Rational>& q_list, int M_max, int depth) {
    require_accumulation(f);
    require_depth(depth);
    if (M_max < 0) {
        throw std::invalid_argument("M_max must be nonnegative");
    }
    const auto qs = sorted_scales(q_list);
    const Chain base = f.expand(depth);
    MembershipReport r;
    r.test = "I_CSP";

    // pass[i][M]
    std::vector<std::vector<bool>> pass;
    Trend last_trend = Trend::Bounded;
    for (const auto& q : qs) {
        auto s = sample_at(f, base, q);
        std::vector<bool> row;
        for (int M = 0; M <= M_max; ++M) {
            bool ok = false;
            const auto& cert = s.sample.certificate;
            if (cert.known()) {
                const auto w = cert.window_liminf(M);
                ok = certified_beta_bounded(cert) && w && w->is_infinite();
            } else {
                const auto maxima = window_maxima(s.gammas, M);
                last_trend = classify_trend(maxima);
                ok = maxima.size() >= 4 && last_trend == Trend::MonotoneIncreasing &&
                     classify_trend(s.betas) != Trend::MonotoneIncreasing;
            }
            row.push_back(ok);
            if (ok && !s.sample.window_M) {
                s.sample.window_M = M;
            }
        }
        s.sample.pass = s.sample.window_M.has_value();
        pass.push_back(std::move(row));
        r.samples.push_back(std::move(s.sample));
    }

    for (int M = 0; M <= M_max && !r.M; ++M) {
        for (std::size_t i = 0; i < qs.size(); ++i) {
            bool tail_ok = true;
            for (std::size_t k = i; k < qs.size(); ++k) {
                tail_ok = tail_ok && pass[k][static_cast<std::size_t>(M)];
            }
            if (tail_ok) {
                r.M = M;
                r.q0 = qs[i];
                break;
            }
        }
    }

    const auto claims = certified_claims(f);
    if (claims.i_csp) {
        const bool value = *claims.i_csp;
        r.verdict = definite(value, decisive_certificate(asymptotic_terms(f), &ClassClaims::i_csp, value),
                             value ? "a single window M works for every q beyond q0"
                                   : "window liminf stays bounded for every q and M");
        return r;
    }
    r.verdict = empirical(r.M.has_value(), depth, last_trend, "window maxima trend over the sampled q");
    return r;
}

DecompositionResult decompose_csp(const TailFamily& f, int N, const Rational& q, int depth,
                                  const Rational& gamma_bound) {
    require_accumulation(f);
    require_depth(depth);
    require_blowup_factor(q);
    if (N < 0) {
        throw std::invalid_argument("N must be nonnegative");
    }
    DecompositionResult d;
    d.N = N;
    d.q = q;
    d.depth = depth;
    d.gamma_bound = gamma_bound;
    d.certificate = profile_certificate(f, q);

    const auto& cert = d.certificate;
    if (cert.known()) {
        if (cert.finite_chain) {
            throw HypothesisError("Cc1 E(q) is finite at q = " + to_string(q));
        }
        if (cert.limsup_beta.is_infinite()) {
            throw HypothesisError("limsup beta is unbounded at q = " + to_string(q));
        }
        const auto w = cert.window_liminf(N);
        if (w && w->is_finite()) {
            throw HypothesisError("bounded window: liminf of max(gamma_n, ..., gamma_{n+" + std::to_string(N) +
                                  "}) = " + to_string(*w) + " at q = " + to_string(q));
        }
        d.hypotheses_certified = true;
    }

    const auto comps = cc1_components(blow_up_chain(f.expand(depth), q));
    const std::size_t width = static_cast<std::size_t>(N) + 1;
    const std::size_t gaps = comps.empty() ? 0 : comps.size() - 1;
    const std::size_t blocks = gaps / width;
    if (blocks < 2) {
        throw HypothesisError("only " + std::to_string(comps.size()) + " components of Cc1 E(q) at depth " +
                              std::to_string(depth) + "; need two full blocks of " + std::to_string(width) + " gaps");
    }
    auto gamma = [&](std::size_t g) { return Rational(comps[g].lo / comps[g + 1].hi); };

    for (std::size_t k = 0; k < blocks; ++k) {
        std::size_t best = k * width;
        for (std::size_t g = best + 1; g < (k + 1) * width; ++g) {
            if (gamma(g) > gamma(best)) {
                best = g;
            }
        }
        d.block_indices.push_back(best);
    }
    d.tail_threshold = comps[d.block_indices.front()].lo;

    const std::size_t slots = 2 * static_cast<std::size_t>(N) + 1;
    d.parts.resize(slots);
    for (std::size_t k = 0; k + 1 < blocks; ++k) {
        const std::size_t first = d.block_indices[k] + 1;
        const std::size_t last = d.block_indices[k + 1];
        for (std::size_t i = first; i <= last; ++i) {
            d.parts[i - first].components.push_back(comps[i]);
        }
    }
    const std::size_t first = d.block_indices.front() + 1;
    const std::size_t last = d.block_indices.back();
    d.source.assign(comps.begin() + static_cast<std::ptrdiff_t>(first),
                    comps.begin() + static_cast<std::ptrdiff_t>(last + 1));
    d.cover_verified_to = comps[last].lo;

    std::vector<Block> joined;
    for (const auto& part : d.parts) {
        joined.insert(joined.end(), part.components.begin(), part.components.end());
    }
    d.cover_exact = normalize(joined) == normalize(d.source);

    Rational observed_beta = 1;
    for (const auto& c : d.source) {
        observed_beta = std::max(observed_beta, Rational(c.hi / c.lo));
    }
    d.beta_bound = observed_beta;
    if (cert.known() && cert.limsup_beta.is_finite() && cert.limsup_beta.value() > d.beta_bound) {
        d.beta_bound = cert.limsup_beta.value();
    }

    for (auto& part : d.parts) {
        const auto& pc = part.components;
        for (std::size_t i = 0; i + 1 < pc.size(); ++i) {
            part.gammas.emplace_back(pc[i].lo / pc[i + 1].hi);
        }
        std::size_t from = part.gammas.size();
        while (from > 0 && part.gammas[from - 1] > gamma_bound) {
            --from;
        }
        if (from < part.gammas.size() || part.gammas.empty()) {
            part.exceeds_from = from;
        }
        part.gamma_trend = classify_trend(part.gammas);
        SequencePair sp;
        for (const auto& c : pc) {
            sp.tau.push_back(c.hi);
            sp.h.push_back(c.lo);
        }
        sp.c1 = 1 / d.beta_bound;
        sp.c2 = 1;
        part.equivalence_holds = check_equivalence(sp);
    }
    return d;
}

nlohmann::json to_json(const DecompositionResult& d) {
    nlohmann::json j;
    j["N"] = d.N;
    j["q"] = to_string(d.q);
    j["depth"] = d.depth;
    j["hypotheses_certified"] = d.hypotheses_certified;
    j["certificate"] = to_json(d.certificate);
    j["block_indices"] = d.block_indices;
    j["cover_exact"] = d.cover_exact;
    j["cover_verified_to"] = to_string(d.cover_verified_to);
    j["beta_bound"] = to_string(d.beta_bound);
    j["gamma_bound"] = to_string(d.gamma_bound);
    j["parts"] = nlohmann::json::array();
    for (std::size_t i = 0; i < d.parts.size(); ++i) {
        const auto& p = d.parts[i];
        nlohmann::json part;
        part["index"] = i + 1;
        part["components"] = nlohmann::json::array();
        for (const auto& c : p.components) {
            part["components"].push_back(to_string(c));
        }
        part["gamma_trend"] = to_string(p.gamma_trend);
        part["exceeds_bound_from"] = p.exceeds_from ? nlohmann::json(*p.exceeds_from) : nlohmann::json();
        part["equivalence_holds"] = p.equivalence_holds;
        j["parts"].push_back(part);
    }
    j["parts"].push_back({{"index", d.parts.size() + 1},
                          {"symbolic", "{0} u (" + to_string(d.tail_threshold) + ", inf)"}});
    return j;
}

long example_exponent(const Rational& alpha, const Rational& q) {
    if (alpha <= 0 || alpha >= 1) {
        throw std::invalid_argument("alpha must lie in (0, 1)");
    }
    long m = 1;
    Rational power = 1 / alpha;
    while (!(q < power)) {
        ++m;
        power /= alpha;
    }
    return m;
}

ExampleReport reproduce_example(const Rational& alpha, int depth, const std::vector<Rational>& q_list, int M_max) {
    const auto family = example_family(alpha);
    ExampleReport r;
    r.alpha = alpha;
    r.depth = depth;
    r.M_max = M_max;
    r.ihat_sp = test_ihat_sp(*family, q_list, depth);
    r.i_csp = test_i_csp(*family, q_list, M_max, depth);
    r.verdict_pair_ok = r.ihat_sp.verdict.definite && r.ihat_sp.verdict.value && r.i_csp.verdict.definite &&
                        !r.i_csp.verdict.value;

    const Chain base = family->expand(depth);
    for (const auto& q : sorted_scales(q_list)) {
        ExampleRow row;
        row.q = q;
        row.m = example_exponent(alpha, q);
        row.merge_depth = example_merge_depth(alpha, q);
        Rational sum = 0;
        for (long k = 0; k <= row.m; ++k) {
            sum += pow(alpha, -k);
        }
        row.estimate_beta_sum = sum;
        const auto cert = profile_certificate(*family, q);
        row.certified_beta_limsup = cert.limsup_beta;
        row.estimate_covers_certified = cert.limsup_beta <= ExtRational(sum);
        row.window_bounds_hold = true;
        for (int M = 0; M <= M_max; ++M) {
            const Rational bound = pow(alpha, -(row.m + M + 1));
            row.window_bounds.push_back(bound);
            const auto w = cert.window_liminf(M);
            row.certified_window.push_back(w ? *w : ExtRational::infinity());
            row.window_bounds_hold = row.window_bounds_hold && w && *w <= ExtRational(bound);
        }
        const auto s = sample_at(*family, base, q);
        row.observed_components = s.sample.components;
        row.observed_beta_max = s.sample.observed_beta_max;
        r.rows.push_back(std::move(row));
    }
    return r;
}

nlohmann::json to_json(const ExampleReport& r) {
    nlohmann::json j;
    j["alpha"] = to_string(r.alpha);
    j["depth"] = r.depth;
    j["M_max"] = r.M_max;
    j["verdicts"] = {{"Ihat_SP", to_json(r.ihat_sp.verdict)}, {"I_CSP", to_json(r.i_csp.verdict)}};
    j["verdict_pair_ok"] = r.verdict_pair_ok;
    j["rows"] = nlohmann::json::array();
    for (const auto& row : r.rows) {
        nlohmann::json x;
        x["q"] = to_string(row.q);
        x["m"] = row.m;
        x["merge_depth"] = row.merge_depth;
        x["beta_sum_estimate"] = to_string(row.estimate_beta_sum);
        x["beta_limsup_certified"] = to_string(row.certified_beta_limsup);
        x["estimate_covers_certified"] = row.estimate_covers_certified;
        x["window_bounds"] = nlohmann::json::array();
        x["window_liminf_certified"] = nlohmann::json::array();
        for (std::size_t M = 0; M < row.window_bounds.size(); ++M) {
            x["window_bounds"].push_back(to_string(row.window_bounds[M]));
            x["window_liminf_certified"].push_back(to_string(row.certified_window[M]));
        }
        x["window_bounds_hold"] = row.window_bounds_hold;
        x["observed_components"] = row.observed_components;
        x["observed_beta_max"] = opt_json(row.observed_beta_max);
        j["rows"].push_back(x);
    }
    return j;
}

}  // namespace porosity
