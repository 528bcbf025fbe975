#pragma once

// Verdicts for SP, CSP, I(CSP) and I-hat(SP), and the explicit splitting of
// a set in I(CSP) into 2N + 2 completely strongly porous parts.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "porosity/family.hpp"
#include "porosity/tailset.hpp"

namespace porosity {

/// The family violates the hypotheses of a construction; exit status 2 in the CLI.
class HypothesisError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Definite verdicts come from closed-form certificates valid for every q > 1;
/// Empirical verdicts describe the trend of finitely many terms.
struct Verdict {
    bool definite = false;
    bool value = false;
    TailCertificate certificate;
    int depth = 0;
    Trend trend = Trend::Bounded;
    std::string note;
};

std::string to_string(const Verdict& v);
nlohmann::json to_json(const Verdict& v);

/// Certified all-q membership of the generated set; unset where no certificate applies.
struct ClassClaims {
    std::optional<bool> sp;
    std::optional<bool> csp;
    std::optional<bool> i_csp;
    std::optional<bool> ihat_sp;
};

ClassClaims certified_claims(const TailFamily& f);

struct ScaleSample {
    Rational q;
    std::size_t components = 0;  // |Cc1 E(q)| at depth
    std::optional<Rational> observed_beta_max;
    TailCertificate certificate;  // at this q; Unknown for families without a joint closed form
    std::optional<int> window_M;  // smallest passing window, I(CSP) only
    bool pass = false;
};

struct MembershipReport {
    std::string test;
    Verdict verdict;
    std::vector<ScaleSample> samples;
    std::optional<int> M;
    std::optional<Rational> q0;
    std::optional<Rational> witness_q;
    std::vector<Rational> witness_ladder;
};

nlohmann::json to_json(const MembershipReport& r);

/// Throws std::invalid_argument when 0 is not an accumulation point of the family.
MembershipReport is_sp(const TailFamily& f, int depth);

/// Cc1 E(q) infinite with limsup beta finite, for every q.
MembershipReport test_ihat_sp(const TailFamily& f, const std::vector<Rational>& q_list, int depth);

/// Some q with beta bounded and gamma -> inf; the witness ladder is the lower
/// ends of Cc1 E(q).
MembershipReport test_csp(const TailFamily& f, int depth);

/// Some q0 and a single M with limsup beta finite and the (M+1)-window maximum of
/// gamma tending to infinity for every q > q0. M is searched upward from 0.
MembershipReport test_i_csp(const TailFamily& f, const std::vector<Rational>& q_list, int M_max, int depth);

struct DecompositionPart {
    std::vector<Block> components;
    std::vector<Rational> gammas;
    std::optional<std::size_t> exceeds_from;  // gammas[i] > bound for every i >= exceeds_from
    Trend gamma_trend = Trend::Bounded;
    bool equivalence_holds = false;            // a <= x <= b within c * a for every component
};

struct DecompositionResult {
    int N = 0;
    Rational q;
    int depth = 0;
    std::vector<DecompositionPart> parts;      // B_1 .. B_{2N+1}
    Rational tail_threshold;                   // B_{2N+2} = {0} u (tail_threshold, inf)
    std::vector<std::size_t> block_indices;    // m_k: gap index of the largest gamma in block k
    std::vector<Block> source;                 // components the parts must reproduce
    bool cover_exact = false;
    Rational cover_verified_to;
    Rational beta_bound;
    Rational gamma_bound;
    bool hypotheses_certified = false;
    TailCertificate certificate;
};

nlohmann::json to_json(const DecompositionResult& d);

/// Throws HypothesisError naming the failing condition (finite chain, unbounded beta,
/// or a bounded (N+1)-window), std::invalid_argument for bad parameters.
DecompositionResult decompose_csp(const TailFamily& f, int N, const Rational& q, int depth,
                                  const Rational& gamma_bound = 1000000);

struct ExampleRow {
    Rational q;
    long m = 0;                        // smallest m >= 1 with q < (1/alpha)^m
    long merge_depth = 0;              // gaps merged per block at this q
    Rational estimate_beta_sum;        // sum_{k=0}^{m} alpha^-k
    ExtRational certified_beta_limsup;
    bool estimate_covers_certified = false;
    std::vector<Rational> window_bounds;        // (1/alpha)^(m+M+1), M = 0..M_max
    std::vector<ExtRational> certified_window;  // liminf of the window maximum
    bool window_bounds_hold = false;
    std::size_t observed_components = 0;
    std::optional<Rational> observed_beta_max;
};

struct ExampleReport {
    Rational alpha;
    int depth = 0;
    int M_max = 0;
    MembershipReport ihat_sp;
    MembershipReport i_csp;
    std::vector<ExampleRow> rows;
    bool verdict_pair_ok = false;  // (I-hat(SP): true, I(CSP): false), both Definite
};

nlohmann::json to_json(const ExampleReport& r);

/// Smallest m >= 1 with q < (1/alpha)^m.
long example_exponent(const Rational& alpha, const Rational& q);

ExampleReport reproduce_example(const Rational& alpha, int depth, const std::vector<Rational>& q_list, int M_max);

}  // namespace porosity
