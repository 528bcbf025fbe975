#include <gtest/gtest.h>

#include <stdexcept>

#include "oracles.hpp"
#include "porosity/chain.hpp"

using namespace porosity;

namespace {

Block pt(long n, long d) { return Block::point(ratio(n, d)); }
Block iv(long a, long b, long c, long d) { return Block::interval(ratio(a, b), ratio(c, d)); }

std::vector<oracle::Piece> pieces(const std::vector<Block>& bs) {
    std::vector<oracle::Piece> out;
    for (const auto& b : bs) {
        out.push_back({b.lo, b.hi});
    }
    return out;
}

std::vector<Block> random_blocks(oracle::Rng& rng, int count) {
    std::vector<Block> out;
    for (int i = 0; i < count; ++i) {
        const long a = rng.uniform(1, 15);
        if (rng.coin()) {
            out.push_back(pt(a, 16));
        } else {
            out.push_back(iv(a, 16, a + rng.uniform(1, 4), 16));
        }
    }
    return out;
}

}  // namespace

TEST(Block, Containment) {
    EXPECT_TRUE(iv(1, 4, 1, 2).contains(ratio(1, 3)));
    EXPECT_FALSE(iv(1, 4, 1, 2).contains(ratio(1, 4)));
    EXPECT_TRUE(pt(1, 3).within(iv(1, 4, 1, 2)));
    EXPECT_FALSE(pt(1, 4).within(iv(1, 4, 1, 2)));
    EXPECT_TRUE(iv(1, 4, 1, 3).within(iv(1, 4, 1, 2)));
    EXPECT_FALSE(iv(1, 4, 1, 2).within(pt(1, 4)));
    EXPECT_THROW(Block::interval(ratio(1, 2), ratio(1, 2)), std::invalid_argument);
    EXPECT_THROW(Block::point(Rational(0)), std::invalid_argument);
}

TEST(Normalize, MergesOverlapsAndAbsorbsPoints) {
    const auto out = normalize({iv(1, 4, 1, 2), iv(1, 3, 3, 4), pt(1, 3), pt(1, 8), pt(1, 8)});
    ASSERT_EQ(out.size(), 2U);
    EXPECT_EQ(out[0], iv(1, 4, 3, 4));
    EXPECT_EQ(out[1], pt(1, 8));
}

TEST(Normalize, TouchingIntervalsStayApartUnlessThePointJoinsThem) {
    const auto apart = normalize({iv(1, 4, 1, 2), iv(1, 2, 1, 1)});
    EXPECT_EQ(apart.size(), 2U);
    const auto joined = normalize({iv(1, 4, 1, 2), iv(1, 2, 1, 1), pt(1, 2)});
    ASSERT_EQ(joined.size(), 1U);
    EXPECT_EQ(joined[0], iv(1, 4, 1, 1));
}

TEST(Normalize, PreservesTheSetAndIsIdempotent) {
    oracle::Rng rng(11);
    for (int trial = 0; trial < 400; ++trial) {
        const auto raw = random_blocks(rng, rng.uniform(0, 8));
        const auto out = normalize(raw);
        EXPECT_TRUE(oracle::same_set_on(pieces(raw), pieces(out), 0, 2));
        EXPECT_EQ(normalize(out), out);
        for (std::size_t i = 1; i < out.size(); ++i) {
            EXPECT_LE(out[i].hi, out[i - 1].lo);
        }
    }
}

TEST(Subset, PointSharingTheLowerEndOfAnInterval) {
    // regression: the point {3/32} sits next to (3/32, 1/5) in the same list
    const std::vector<Block> big{iv(3, 32, 1, 5), pt(3, 32)};
    EXPECT_TRUE(is_subset({pt(3, 32)}, big));
    EXPECT_TRUE(is_subset({iv(1, 10, 1, 6)}, big));
    EXPECT_FALSE(is_subset({pt(1, 5)}, big));
}

TEST(Subset, AgreesWithPointwiseOracle) {
    oracle::Rng rng(12);
    for (int trial = 0; trial < 400; ++trial) {
        const auto a = random_blocks(rng, rng.uniform(0, 4));
        const auto b = random_blocks(rng, rng.uniform(0, 8));
        const bool lib = is_subset(a, b);
        const auto ab = pieces(set_union(a, b));
        const bool want = oracle::same_set_on(ab, pieces(b), 0, 2);
        EXPECT_EQ(lib, want);
    }
}

TEST(Restrict, ClipsToTheOpenWindow) {
    const auto out = restrict_to({iv(1, 2, 1, 1), pt(1, 4), pt(1, 8)}, ratio(1, 8), ratio(3, 4));
    ASSERT_EQ(out.size(), 2U);
    EXPECT_EQ(out[0], iv(1, 2, 3, 4));
    EXPECT_EQ(out[1], pt(1, 4));
}

TEST(ChainCtor, ValidatesOrderBoundsAndHorizon) {
    EXPECT_NO_THROW(Chain({pt(1, 1), iv(1, 4, 1, 2), pt(1, 4)}, 1, ratio(1, 4)));
    EXPECT_THROW(Chain({pt(1, 4), pt(1, 2)}, 1, 0), std::invalid_argument);
    EXPECT_THROW(Chain({pt(2, 1)}, 1, 0), std::invalid_argument);
    EXPECT_THROW(Chain({pt(1, 8)}, 1, ratio(1, 4)), std::invalid_argument);
    EXPECT_THROW(Chain({}, 1, 2), std::invalid_argument);
    EXPECT_THROW(Chain({pt(1, 2), pt(1, 2)}, 1, 0), std::invalid_argument);
}

TEST(ChainNormalized, DropsPiecesBelowTheHorizon) {
    const auto c = Chain::normalized({pt(1, 1), iv(1, 16, 1, 8), iv(1, 64, 1, 32)}, 1, ratio(1, 16));
    ASSERT_EQ(c.size(), 2U);
    EXPECT_TRUE(c.has_points());
    EXPECT_TRUE(c.has_intervals());
    EXPECT_TRUE(c.is_reliable(1));
}
