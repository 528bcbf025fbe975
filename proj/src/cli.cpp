#include "porosity/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "porosity/blowup.hpp"
#include "porosity/ideal_core.hpp"
#include "porosity/membership.hpp"
#include "porosity/tailset.hpp"

namespace porosity::cli {

namespace {

using nlohmann::json;

FamilyPtr load_family(const std::string& spec) {
    if (spec.empty()) {
        throw std::invalid_argument("--family is required for this command");
    }
    const auto first = spec.find_first_not_of(" \t\n");
    if (first != std::string::npos && spec[first] == '{') {
        return family_from_json(json::parse(spec));
    }
    std::ifstream in(spec);
    if (!in) {
        throw std::invalid_argument("cannot read family file '" + spec + "'");
    }
    return family_from_json(json::parse(in));
}

std::vector<Rational> parse_scales(const std::vector<std::string>& texts) {
    std::vector<Rational> qs;
    for (const auto& t : texts) {
        qs.push_back(parse_rational(t));
        require_blowup_factor(qs.back());
    }
    if (qs.empty()) {
        throw std::invalid_argument("at least one --q is required");
    }
    return qs;
}

json header(const RunConfig& c) { return {{"schema", kSchema}, {"command", c.command}}; }

void emit(const RunConfig& c, std::ostream& out, const json& report, const std::string& text) {
    if (c.format == "json") {
        out << report.dump(2) << '\n';
    } else {
        out << text;
    }
}

json probes_json(const std::vector<ProbePoint>& probes) {
    json arr = json::array();
    for (const auto& p : probes) {
        arr.push_back({{"h", to_string(p.h)}, {"ratio", to_string(p.ratio)}, {"valid", p.valid}});
    }
    return arr;
}

json blocks_json(const std::vector<Block>& blocks) {
    json arr = json::array();
    for (const auto& b : blocks) {
        arr.push_back(to_string(b));
    }
    return arr;
}

json rationals_json(const std::vector<Rational>& values) {
    json arr = json::array();
    for (const auto& v : values) {
        arr.push_back(to_string(v));
    }
    return arr;
}

int analyze(const RunConfig& c, std::ostream& out) {
    const auto f = load_family(c.family);
    const auto qs = parse_scales(c.q_list);

    const auto sp = is_sp(*f, c.depth);
    const auto csp = test_csp(*f, c.depth);
    const auto icsp = test_i_csp(*f, qs, c.M_max, c.depth);
    const auto ihat = test_ihat_sp(*f, qs, c.depth);
    const auto profile = porosity_profile(*f, c.depth);

    json report = header(c);
    report["family"] = to_json(*f);
    report["depth"] = c.depth;
    report["q"] = rationals_json(qs);
    report["M_max"] = c.M_max;
    report["verdicts"] = {{"SP", to_json(sp.verdict)},
                          {"CSP", to_json(csp.verdict)},
                          {"I_CSP", to_json(icsp.verdict)},
                          {"Ihat_SP", to_json(ihat.verdict)}};
    report["certificates"] = json::array();
    report["certificates"].push_back({{"q", "1"}, {"certificate", to_json(profile.certificate)}});
    for (const auto& q : qs) {
        report["certificates"].push_back({{"q", to_string(q)}, {"certificate", to_json(profile_certificate(*f, q))}});
    }

    const auto cert_q = profile_certificate(*f, qs.front());
    const int window_M = icsp.M ? *icsp.M : c.M_max;
    json bounds;
    bounds["q"] = to_string(qs.front());
    bounds["beta_limsup"] = cert_q.known() && !cert_q.finite_chain ? json(to_string(cert_q.limsup_beta)) : json();
    const auto w = cert_q.window_liminf(window_M);
    bounds["window_M"] = window_M;
    bounds["window_liminf"] = w ? json(to_string(*w)) : json();
    report["bounds"] = bounds;

    report["porosity"] = {{"p_plus", profile.certified_p_plus ? json(to_string(*profile.certified_p_plus)) : json()},
                          {"probes", probes_json(profile.probes)}};
    report["details"] = {{"SP", to_json(sp)}, {"CSP", to_json(csp)}, {"I_CSP", to_json(icsp)}, {"Ihat_SP", to_json(ihat)}};

    std::ostringstream text;
    text << "family: " << to_json(*f).dump() << '\n';
    text << "SP: " << to_string(sp.verdict);
    if (profile.certified_p_plus) {
        text << "  p+ = " << to_string(*profile.certified_p_plus);
    }
    text << '\n';
    text << "CSP: " << to_string(csp.verdict) << '\n';
    text << "I(CSP): " << to_string(icsp.verdict);
    if (icsp.M) {
        text << "  M = " << *icsp.M << ", q0 = " << to_string(*icsp.q0);
    }
    text << '\n';
    text << "Ihat(SP): " << to_string(ihat.verdict) << '\n';
    text << "beta limsup at q = " << to_string(qs.front()) << ": " << bounds["beta_limsup"].dump() << '\n';
    emit(c, out, report, text.str());
    return kOk;
}

int blowup(const RunConfig& c, std::ostream& out) {
    const auto f = load_family(c.family);
    const auto qs = parse_scales(c.q_list);
    const Chain base = f->expand(c.depth);

    json report = header(c);
    report["family"] = to_json(*f);
    report["depth"] = c.depth;
    report["blowups"] = json::array();
    std::ostringstream text;
    for (const auto& q : qs) {
        const Chain blown = blow_up_chain(base, q);
        const auto comps = cc1_components(blown);
        RatioProfile ratios = ratio_profile(*blowup_of(f, q), c.depth);
        json row;
        row["q"] = to_string(q);
        row["horizon"] = to_string(blown.horizon());
        row["components"] = blocks_json(normalize(blown.blocks()));
        row["cc1"] = blocks_json(comps);
        row["betas"] = rationals_json(ratios.betas);
        row["gammas"] = rationals_json(ratios.gammas);
        row["certificate"] = to_json(ratios.certificate);
        report["blowups"].push_back(row);
        text << "q = " << to_string(q) << ": " << comps.size() << " Cc1 components above horizon "
             << to_string(blown.horizon()) << '\n';
        for (const auto& b : comps) {
            text << "  " << to_string(b) << '\n';
        }
    }
    const auto cover = find_covering_blowup(*f, c.depth);
    if (cover) {
        report["covering_blowup"] = {{"s", to_string(cover->s)},
                                     {"q", to_string(cover->q)},
                                     {"t", to_string(cover->t)},
                                     {"covered_from", to_string(cover->covered_from)}};
        text << "covering blow-up: q = " << to_string(cover->q) << " covers (" << to_string(cover->covered_from)
             << ", " << to_string(cover->t) << ")\n";
    } else {
        report["covering_blowup"] = nullptr;
        text << "covering blow-up: none\n";
    }
    emit(c, out, report, text.str());
    return kOk;
}

int decompose(const RunConfig& c, std::ostream& out) {
    const auto f = load_family(c.family);
    const auto qs = parse_scales(c.q_list);
    json report = header(c);
    report["family"] = to_json(*f);
    try {
        const auto d = decompose_csp(*f, c.N, qs.front(), c.depth);
        report["status"] = "ok";
        report["decomposition"] = to_json(d);
        std::ostringstream text;
        text << d.parts.size() + 1 << " parts, cover " << (d.cover_exact ? "exact" : "NOT exact") << " down to "
             << to_string(d.cover_verified_to) << '\n';
        for (std::size_t i = 0; i < d.parts.size(); ++i) {
            text << "  B" << i + 1 << ": " << d.parts[i].components.size() << " components, gamma > "
                 << to_string(d.gamma_bound) << " from index "
                 << (d.parts[i].exceeds_from ? std::to_string(*d.parts[i].exceeds_from) : std::string("-")) << '\n';
        }
        text << "  B" << d.parts.size() + 1 << ": {0} u (" << to_string(d.tail_threshold) << ", inf)\n";
        emit(c, out, report, text.str());
        return kOk;
    } catch (const HypothesisError& e) {
        report["status"] = "hypothesis-failure";
        report["message"] = e.what();
        emit(c, out, report, std::string("hypothesis failure: ") + e.what() + '\n');
        return kHypothesisFailure;
    }
}

int verify_foundations(const RunConfig& c, std::ostream& out) {
    if (c.n < 1 || c.n > ideals::kMaxExhaustive) {
        throw std::invalid_argument("--n must lie in [1, 4]");
    }
    using namespace porosity::ideals;
    const int small = std::min(c.n, 3);
    const std::vector<TheoremCheck> checks = {check_theorem_istar_eq_ihat(c.n), check_istar_ideal_iff(c.n),
                                              check_maximal_ideal_existence(small),
                                              check_generated_ideal_minimality(small), check_prime_iff_maximal(c.n)};
    const auto sweep = blowup_property_sweep(c.seed, c.trials);

    json report = header(c);
    report["n"] = c.n;
    report["seed"] = c.seed;
    report["checks"] = json::array();
    for (const auto& chk : checks) {
        report["checks"].push_back(to_json(chk));
    }
    json props = json::array();
    for (const auto& p : sweep.properties) {
        props.push_back({{"property", p.name}, {"checked", p.checked}, {"violations", p.violations}});
    }
    report["blowup_sweep"] = {{"trials", sweep.trials}, {"properties", props}};

    const auto& main = checks.front();
    const int at_n = main.per_universe.back().scanned;
    std::ostringstream text;
    text << at_n << " down-set bases scanned, " << main.counterexample_count() << " counterexamples to I* = Î\n";
    for (std::size_t i = 1; i < checks.size(); ++i) {
        text << checks[i].name << ": " << checks[i].scanned() << " scanned, " << checks[i].counterexample_count()
             << " counterexamples\n";
    }
    text << "blow-up sweep (seed " << c.seed << ", " << sweep.trials << " chains): " << sweep.total_violations()
         << " violations\n";
    report["summary"] = text.str().substr(0, text.str().find('\n'));
    emit(c, out, report, text.str());
    return kOk;
}

int reproduce(const RunConfig& c, std::ostream& out) {
    const Rational alpha = parse_rational(c.alpha);
    const auto qs = parse_scales(c.q_list);
    const auto r = reproduce_example(alpha, c.depth, qs, c.M_max);
    json report = header(c);
    report["example"] = to_json(r);

    std::ostringstream text;
    text << "alpha = " << to_string(alpha) << ", depth " << c.depth << '\n';
    text << "Ihat(SP): " << to_string(r.ihat_sp.verdict) << "  I(CSP): " << to_string(r.i_csp.verdict) << '\n';
    for (const auto& row : r.rows) {
        text << "q = " << to_string(row.q) << ": m = " << row.m << ", beta sum estimate "
             << to_string(row.estimate_beta_sum) << ", certified limsup beta " << to_string(row.certified_beta_limsup)
             << ", window bound (1/alpha)^(m+M+1) = " << to_string(row.window_bounds.front()) << " at M = 0, "
             << to_string(row.window_bounds.back()) << " at M = " << c.M_max << '\n';
    }
    emit(c, out, report, text.str());
    return kOk;
}

}  // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
    try {
        if (config.format != "json" && config.format != "text") {
            throw std::invalid_argument("--format must be json or text");
        }
        if (config.depth < 1) {
            throw std::invalid_argument("--depth must be at least 1");
        }
        if (config.M_max < 0) {
            throw std::invalid_argument("--M must be nonnegative");
        }
        if (config.command == "analyze") {
            return analyze(config, out);
        }
        if (config.command == "blowup") {
            return blowup(config, out);
        }
        if (config.command == "decompose") {
            return decompose(config, out);
        }
        if (config.command == "verify-foundations") {
            return verify_foundations(config, out);
        }
        if (config.command == "reproduce-example") {
            return reproduce(config, out);
        }
        throw std::invalid_argument("unknown command '" + config.command + "'");
    } catch (const HypothesisError& e) {
        err << "hypothesis failure: " << e.what() << '\n';
        return kHypothesisFailure;
    } catch (const json::exception& e) {
        err << "error: malformed JSON: " << e.what() << '\n';
        return kInputError;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    }
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Porosity ideals lab: blow-ups, membership verdicts and finite ideal checks"};
    RunConfig config;
    app.add_option("command", config.command, "analyze | blowup | decompose | verify-foundations | reproduce-example")
        ->required()
        ->check(CLI::IsMember({"analyze", "blowup", "decompose", "verify-foundations", "reproduce-example"}));
    app.add_option("--family", config.family, "family descriptor: inline JSON or a file path");
    app.add_option("--q", config.q_list, "blow-up factor p/q > 1 (repeatable)")->take_all();
    app.add_option("--depth", config.depth, "expansion depth")->capture_default_str();
    app.add_option("--M", config.M_max, "largest window size searched")->capture_default_str();
    app.add_option("--n", config.n, "universe size for verify-foundations")->capture_default_str();
    app.add_option("--N", config.N, "window parameter for decompose")->capture_default_str();
    app.add_option("--alpha", config.alpha, "Example parameter in (0, 1)")->capture_default_str();
    app.add_option("--format", config.format, "json | text")->capture_default_str();
    app.add_option("--seed", config.seed, "seed for randomized sweeps")->capture_default_str();
    app.add_option("--trials", config.trials, "random chains in the blow-up sweep")->capture_default_str();
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kInputError;
    }
    return run(config, out, err);
}

}  // namespace porosity::cli
