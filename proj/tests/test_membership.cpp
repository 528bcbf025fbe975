#include <gtest/gtest.h>

#include <stdexcept>

#include "oracles.hpp"
#include "porosity/blowup.hpp"
#include "porosity/membership.hpp"

using namespace porosity;

namespace {

const std::vector<Rational> kScales{ratio(3, 2), 2, 3};

FamilyPtr cluster(const Rational& rho, const std::vector<Rational>& offsets) {
    std::vector<FamilyPtr> members;
    for (const auto& x0 : offsets) {
        members.push_back(super_geometric_ladder(x0, rho));
    }
    return union_of(members);
}

void expect_definite(const Verdict& v, bool value) {
    EXPECT_TRUE(v.definite) << to_string(v);
    EXPECT_EQ(v.value, value) << to_string(v);
}

std::vector<oracle::Piece> pieces(const std::vector<Block>& bs) {
    std::vector<oracle::Piece> out;
    for (const auto& b : bs) {
        out.push_back({b.lo, b.hi});
    }
    return out;
}

std::vector<FamilyPtr> corpus() {
    return {
        geometric_ladder(1, ratio(1, 2)),
        geometric_ladder(1, ratio(1, 10)),
        super_geometric_ladder(1, ratio(1, 2)),
        super_geometric_ladder(ratio(1, 3), ratio(1, 5)),
        example_family(ratio(1, 2)),
        example_family(ratio(2, 3)),
        cluster(ratio(1, 10), {1, ratio(1, 16)}),
        union_of({super_geometric_ladder(1, ratio(1, 2)), example_family(ratio(1, 2))}),
        union_of({super_geometric_ladder(1, ratio(1, 2)), geometric_ladder(1, ratio(1, 3))}),
        blowup_of(example_family(ratio(1, 3)), 2),
    };
}

}  // namespace

TEST(IsSp, ClosedFormVerdicts) {
    expect_definite(is_sp(*super_geometric_ladder(1, ratio(1, 2)), 10).verdict, true);
    expect_definite(is_sp(*geometric_ladder(1, ratio(1, 2)), 10).verdict, false);
    expect_definite(is_sp(*example_family(ratio(1, 2)), 6).verdict, true);
    EXPECT_THROW(is_sp(*explicit_chain(Chain({Block::point(1)}, 1, 0)), 4), std::invalid_argument);
}

TEST(IhatSp, ClosedFormVerdicts) {
    expect_definite(test_ihat_sp(*example_family(ratio(1, 2)), {3}, 8).verdict, true);
    const auto geo = test_ihat_sp(*geometric_ladder(1, ratio(1, 2)), {4}, 16);
    expect_definite(geo.verdict, false);
    ASSERT_EQ(geo.samples.size(), 1U);
    EXPECT_TRUE(geo.samples[0].certificate.finite_chain);
    expect_definite(test_ihat_sp(*super_geometric_ladder(1, ratio(1, 2)), kScales, 10).verdict, true);
}

TEST(Csp, ClosedFormVerdictsAndWitness) {
    const auto sgl = test_csp(*super_geometric_ladder(1, ratio(1, 2)), 10);
    expect_definite(sgl.verdict, true);
    ASSERT_GE(sgl.witness_ladder.size(), 4U);
    for (std::size_t i = 2; i < sgl.witness_ladder.size(); ++i) {
        const Rational prev = sgl.witness_ladder[i - 1] / sgl.witness_ladder[i - 2];
        const Rational cur = sgl.witness_ladder[i] / sgl.witness_ladder[i - 1];
        EXPECT_LT(cur, prev);
    }
    expect_definite(test_csp(*geometric_ladder(1, ratio(1, 2)), 10).verdict, false);
    expect_definite(test_csp(*example_family(ratio(1, 2)), 6).verdict, false);
}

TEST(ICsp, ExampleAndLadder) {
    expect_definite(test_i_csp(*example_family(ratio(1, 2)), {3}, 8, 8).verdict, false);
    const auto sgl = test_i_csp(*super_geometric_ladder(1, ratio(1, 2)), kScales, 8, 10);
    expect_definite(sgl.verdict, true);
    EXPECT_EQ(sgl.M, std::optional<int>(0));
}

TEST(ICsp, WindowSizeMatters) {
    const auto f = cluster(ratio(1, 10), {1, ratio(1, 16), ratio(1, 256)});
    const auto wide = test_i_csp(*f, {2}, 8, 8);
    expect_definite(wide.verdict, true);
    EXPECT_EQ(wide.M, std::optional<int>(2));
    EXPECT_EQ(wide.q0, std::optional<Rational>(2));
    const auto narrow = test_i_csp(*f, {2}, 0, 8);
    EXPECT_FALSE(narrow.M.has_value());
}

TEST(ICsp, RejectsNegativeWindow) {
    EXPECT_THROW(test_i_csp(*super_geometric_ladder(1, ratio(1, 2)), {2}, -1, 4), std::invalid_argument);
}

TEST(Claims, Table) {
    const auto geo = certified_claims(*geometric_ladder(1, ratio(1, 2)));
    EXPECT_EQ(geo.sp, false);
    EXPECT_EQ(geo.ihat_sp, false);
    const auto ex = certified_claims(*example_family(ratio(1, 2)));
    EXPECT_EQ(ex.sp, true);
    EXPECT_EQ(ex.csp, false);
    EXPECT_EQ(ex.i_csp, false);
    EXPECT_EQ(ex.ihat_sp, true);
    const auto sgl = certified_claims(*super_geometric_ladder(1, ratio(1, 2)));
    EXPECT_EQ(sgl.csp, true);
    EXPECT_EQ(sgl.i_csp, true);
    const auto finite = certified_claims(*explicit_chain(Chain({Block::point(1)}, 1, 0)));
    EXPECT_EQ(finite.csp, true);
}

TEST(Claims, HierarchyHoldsOnTheCorpus) {
    for (const auto& f : corpus()) {
        const auto c = certified_claims(*f);
        const auto kind = to_json(*f).dump();
        if (c.csp == true) {
            EXPECT_EQ(c.i_csp, true) << kind;
        }
        if (c.i_csp == true) {
            EXPECT_EQ(c.ihat_sp, true) << kind;
        }
        if (c.ihat_sp == true) {
            EXPECT_EQ(c.sp, true) << kind;
        }
        if (c.sp == false) {
            EXPECT_NE(c.csp, true) << kind;
            EXPECT_NE(c.i_csp, true) << kind;
            EXPECT_NE(c.ihat_sp, true) << kind;
        }
    }
}

TEST(Claims, BlowupInvariance) {
    for (const auto& f : corpus()) {
        for (const auto& q : {ratio(3, 2), ratio(2, 1), ratio(5, 1)}) {
            const auto g = blowup_of(f, q);
            const auto kind = to_json(*f).dump() + " q=" + to_string(q);
            const auto a = is_sp(*f, 8).verdict, b = is_sp(*g, 8).verdict;
            if (a.definite && b.definite) {
                EXPECT_EQ(a.value, b.value) << kind;
            }
            const auto c = test_ihat_sp(*f, kScales, 8).verdict, d = test_ihat_sp(*g, kScales, 8).verdict;
            if (c.definite && d.definite) {
                EXPECT_EQ(c.value, d.value) << kind;
            }
            const auto e = test_i_csp(*f, kScales, 4, 8).verdict, h = test_i_csp(*g, kScales, 4, 8).verdict;
            if (e.definite && h.definite) {
                EXPECT_EQ(e.value, h.value) << kind;
            }
        }
    }
}

TEST(Decompose, ClusterPartsReproduceTheSource) {
    for (int N = 1; N <= 3; ++N) {
        std::vector<Rational> offsets;
        for (int i = 0; i <= N; ++i) {
            offsets.push_back(oracle::power(ratio(1, 16), i));
        }
        const auto f = cluster(ratio(1, 100), offsets);
        const auto d = decompose_csp(*f, N, 2, 10);
        ASSERT_EQ(d.parts.size(), static_cast<std::size_t>(2 * N + 1));
        EXPECT_TRUE(d.hypotheses_certified);
        EXPECT_TRUE(d.cover_exact);

        std::vector<Block> joined;
        for (const auto& p : d.parts) {
            joined.insert(joined.end(), p.components.begin(), p.components.end());
            EXPECT_TRUE(p.equivalence_holds);
            ASSERT_TRUE(p.exceeds_from.has_value());
            for (std::size_t i = *p.exceeds_from; i < p.gammas.size(); ++i) {
                EXPECT_GT(p.gammas[i], d.gamma_bound);
            }
        }
        const Rational lo = d.cover_verified_to / 2;
        EXPECT_TRUE(oracle::same_set_on(pieces(joined), pieces(d.source), lo, d.tail_threshold));

        // nothing from the source lies outside the parts, and nothing extra is added
        const auto comps = cc1_components(blow_up_chain(f->expand(10), 2));
        std::vector<Block> window;
        for (const auto& c : comps) {
            if (c.lo >= d.cover_verified_to && c.hi <= d.tail_threshold) {
                window.push_back(c);
            }
        }
        EXPECT_TRUE(oracle::same_set_on(pieces(joined), pieces(window), lo, d.tail_threshold));
    }
}

TEST(Decompose, ArgmaxPrefersTheSmallestIndex) {
    const auto d = decompose_csp(*super_geometric_ladder(1, ratio(1, 2)), 1, 2, 14);
    for (std::size_t k = 0; k < d.block_indices.size(); ++k) {
        EXPECT_GE(d.block_indices[k], 2 * k);
        EXPECT_LT(d.block_indices[k], 2 * k + 2);
    }
}

TEST(Decompose, HypothesisFailures) {
    for (int N = 0; N <= 5; ++N) {
        EXPECT_THROW(decompose_csp(*example_family(ratio(1, 2)), N, 2, 8), HypothesisError) << N;
    }
    EXPECT_THROW(decompose_csp(*geometric_ladder(1, ratio(1, 2)), 1, 2, 12), HypothesisError);
    EXPECT_THROW(decompose_csp(*super_geometric_ladder(1, ratio(1, 2)), 1, 2, 3), HypothesisError);
    EXPECT_THROW(decompose_csp(*super_geometric_ladder(1, ratio(1, 2)), -1, 2, 8), std::invalid_argument);
}

TEST(Example, ExponentIsTheSmallestPowerAboveQ) {
    EXPECT_EQ(example_exponent(ratio(1, 2), 3), 2);
    EXPECT_EQ(example_exponent(ratio(1, 2), ratio(3, 2)), 1);
    EXPECT_EQ(example_exponent(ratio(9, 10), 2), 7);
    EXPECT_EQ(example_exponent(ratio(1, 2), 4), 3);
    EXPECT_THROW(example_exponent(Rational(1), 2), std::invalid_argument);
}

TEST(Example, ReportedSumsAndWindowBounds) {
    const auto r = reproduce_example(ratio(1, 2), 8, {ratio(3, 2), 3}, 8);
    EXPECT_TRUE(r.verdict_pair_ok);
    ASSERT_EQ(r.rows.size(), 2U);
    EXPECT_EQ(r.rows[0].estimate_beta_sum, Rational(3));
    EXPECT_EQ(r.rows[1].estimate_beta_sum, Rational(1 + 2 + 4));
    EXPECT_EQ(r.rows[1].window_bounds[4], Rational(128));
    for (const auto& row : r.rows) {
        EXPECT_TRUE(row.window_bounds_hold);
        for (long M = 0; M <= 8; ++M) {
            EXPECT_EQ(row.window_bounds[static_cast<std::size_t>(M)], oracle::power(2, row.m + M + 1));
        }
    }

    const auto nine = reproduce_example(ratio(9, 10), 4, {2}, 0);
    Rational sum = 0;
    for (long k = 0; k <= 7; ++k) {
        sum += oracle::power(ratio(10, 9), k);
    }
    EXPECT_EQ(nine.rows[0].estimate_beta_sum, sum);
}

TEST(Example, CertifiedBetaExceedsTheSumEstimate) {
    // every blown point gives a component with beta >= q^2, and q^2 > sum for q = 3, alpha = 1/2
    const auto r = reproduce_example(ratio(1, 2), 8, {3}, 0);
    const auto& row = r.rows[0];
    EXPECT_EQ(row.certified_beta_limsup, ExtRational(576));
    EXPECT_FALSE(row.estimate_covers_certified);
    ASSERT_TRUE(row.observed_beta_max.has_value());
    EXPECT_EQ(*row.observed_beta_max, Rational(576));
}
