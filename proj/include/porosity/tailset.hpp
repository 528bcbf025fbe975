#pragma once

// Gap function, porosity probes, ratio profiles and closed-form tail
// certificates for the families in family.hpp.

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "porosity/chain.hpp"
#include "porosity/family.hpp"

namespace porosity {

enum class CertificateKind { ExplicitLimit, EventuallyPeriodic, Unknown };

std::string to_string(CertificateKind kind);

/// liminf over n of max(gamma_n, ..., gamma_{n+M}) = base * growth^M.
struct WindowLaw {
    ExtRational base;
    Rational growth{1};
};

/// Asymptotic description of the component ratios beta_i = b_i / a_i and
/// gamma_i = a_i / b_{i+1}. Isolated points count as components with beta = 1.
struct TailCertificate {
    CertificateKind kind = CertificateKind::Unknown;
    bool finite_chain = false;  // the set fills some (0, t): finitely many components
    ExtRational limsup_beta;
    bool gamma_tends_to_infinity = false;
    ExtRational limsup_gamma;
    std::optional<WindowLaw> window;
    std::vector<ExtRational> beta_pattern;   // EventuallyPeriodic only
    std::vector<ExtRational> gamma_pattern;  // EventuallyPeriodic only
    std::string note;

    bool known() const { return kind != CertificateKind::Unknown; }

    /// liminf of the (M+1)-window maximum of gamma; none when not certified.
    std::optional<ExtRational> window_liminf(int M) const;

    /// Certified right upper porosity at 0: 0 for a filled tail, else 1 - 1/limsup gamma.
    std::optional<Rational> porosity() const;
};

nlohmann::json to_json(const TailCertificate& c);

struct GapResult {
    Rational value;
    bool valid = false;  // false when the unknown region (0, eps] could change the answer
};

/// Length of the largest open subinterval of (0, h) missing the set.
/// Throws std::invalid_argument unless 0 < h <= upper.
GapResult lambda_gap(const Chain& c, const Rational& h);

struct ProbePoint {
    Rational h;
    Rational ratio;  // lambda(h) / h
    bool valid = false;
};

/// lambda/h at h = lower end of every component above the horizon (the right end of
/// the gap below it), descending in h.
std::vector<ProbePoint> probe_ratios(const Chain& c);

struct PorosityProfile {
    std::vector<ProbePoint> probes;
    TailCertificate certificate;
    std::optional<Rational> certified_p_plus;
};

/// Throws std::invalid_argument when 0 is not an accumulation point of the family.
PorosityProfile porosity_profile(const TailFamily& f, int depth);

struct RatioProfile {
    std::vector<Block> components;
    std::vector<Rational> betas;
    std::vector<Rational> gammas;
    TailCertificate certificate;
};

/// Ratios of the reliable components of an interval chain. Throws std::invalid_argument
/// when the chain holds isolated points.
RatioProfile ratio_profile(const Chain& c);

/// Ratios over Cc1 of the expanded family, with the family's certificate attached.
RatioProfile ratio_profile(const TailFamily& f, int depth);

struct SequencePair {
    std::vector<Rational> tau;
    std::vector<Rational> h;
    Rational c1;
    Rational c2;
};

/// c1 * tau_n <= h_n <= c2 * tau_n for every n. Throws on length mismatch.
bool check_equivalence(const SequencePair& sp);

/// First index violating the two-sided bound, if any.
std::optional<std::size_t> first_equivalence_violation(const SequencePair& sp);

/// One asymptotic summand of a family: a leaf blown up by `scale`.
/// A Cluster is a union of super-geometric ladders sharing rho and scale, with
/// distinct offsets listed in descending order.
struct AsymptoticTerm {
    enum class Kind { Geometric, SuperGeometric, Example, Cluster };

    Kind kind;
    Rational scale{1};
    Rational ratio;                // rho, or alpha for Example
    std::vector<Rational> offsets;  // x0 values, descending

    friend bool operator==(const AsymptoticTerm& a, const AsymptoticTerm& b) {
        return a.kind == b.kind && a.scale == b.scale && a.ratio == b.ratio && a.offsets == b.offsets;
    }
};

std::string to_string(AsymptoticTerm::Kind kind);

/// Blow-ups pushed to the leaves (scales multiply), unions flattened, finite
/// leaves dropped, duplicates removed and same-ratio super-geometric ladders
/// grouped into clusters.
std::vector<AsymptoticTerm> asymptotic_terms(const TailFamily& f);

/// Closed-form certificate for the term blown up by a further factor `extra`.
TailCertificate term_certificate(const AsymptoticTerm& term, const Rational& extra = 1);

/// Certificate of the family blown up by `extra`; Unknown unless the family
/// reduces to a single asymptotic term.
TailCertificate profile_certificate(const TailFamily& f, const Rational& extra = 1);

/// Largest k >= 0 with S^2 alpha^k > 1 (0 when none): the number of leading
/// gaps merged in each block of the Example at scale S.
long example_merge_depth(const Rational& alpha, const Rational& scale);

enum class Trend { MonotoneIncreasing, Bounded, Oscillating };

std::string to_string(Trend trend);

/// Compares the two halves of a finite sequence: increasing when the second half
/// lies strictly above the first, bounded when its maximum does not exceed the
/// first half's, oscillating otherwise. Sequences shorter than 2 count as bounded.
Trend classify_trend(const std::vector<Rational>& values);

}  // namespace porosity
