// Copyright 2026 The QMSS Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Black-box construction, shadow verification and share release.

#include <gtest/gtest.h>

#include "qmss/example_scenario.hpp"
#include "test_support.hpp"

namespace qmss {
namespace {

using example::kZ7;
using ff::FieldVector;

BlackBoxBuild example_build() {
  return build_blackbox_with(FieldVector(kZ7, {4, 5, 6, 3}), example::y_matrix());
}

std::map<ParticipantId, ShadowPair> honest_submissions(const BlackBoxBuild& b, ParticipantSet a) {
  std::map<ParticipantId, ShadowPair> out;
  for (auto p : a.members()) out.emplace(p, b.shadows[p.index - 1]);
  return out;
}

TEST(BuildBlackBox, IssuesTabulatedShadows) {
  const auto b = example_build();
  EXPECT_EQ(b.shadows, example::tabulated_shadows());
  EXPECT_EQ(b.sigma, share_diagonal(FieldVector(kZ7, {4, 5, 6, 3})));
}

TEST(BuildBlackBox, RecomputedXDiffersFromTabulatedOnlyInRowFour) {
  const auto x = example_build().state.x_matrix();
  const auto printed = example::tabulated_x();
  std::vector<std::size_t> differing;
  for (std::size_t r = 0; r < 8; ++r) {
    if (x.row(r) != printed.row(r)) differing.push_back(r + 1);
  }
  EXPECT_EQ(differing, std::vector<std::size_t>{4});
  EXPECT_EQ(x.row(3), FieldVector(kZ7, {0, 0, 0, 4, 0, 0, 0, 0}));
}

TEST(BuildBlackBox, TabulatedShadowsAreEigenvectorsOfRecomputedX) {
  const auto b = example_build();
  const std::vector<ff::Element> sh{4, 5, 6, 3};
  const auto shadows = example::tabulated_shadows();
  for (std::size_t k = 0; k < 4; ++k) {
    EXPECT_EQ(ff::eigenvalue_for_vector(b.state.x_matrix(), shadows[k].y1), sh[k]);
    EXPECT_EQ(ff::eigenvalue_for_vector(b.state.x_matrix(), shadows[k].y2), sh[k]);
  }
}

TEST(BuildBlackBox, RejectsBadInputs) {
  EXPECT_THROW((void)build_blackbox_with(FieldVector(kZ7, 0), ff::FieldMatrix(kZ7, 0, 0)),
               InvalidArgument);
  EXPECT_THROW((void)build_blackbox_with(FieldVector(kZ7, {1, 2}), ff::FieldMatrix::identity(kZ7, 3)),
               DimensionMismatch);
  EXPECT_THROW((void)build_blackbox_with(FieldVector(kZ7, {1}), ff::FieldMatrix(kZ7, 2, 2)),
               SingularMatrix);
}

TEST(VerifyShadows, AcceptsIssuedPairs) {
  const auto b = example_build();
  for (std::size_t k = 1; k <= 4; ++k) {
    const auto v = verify_shadows(b.state, ParticipantId{k}, b.shadows[k - 1]);
    EXPECT_TRUE(v.accepted);
    EXPECT_EQ(v.share, b.state.stored_share(ParticipantId{k}));
  }
}

TEST(VerifyShadows, ReasonForEachKindOfForgery) {
  const auto b = example_build();
  const auto& s1 = b.shadows[0];
  auto reason = [&](std::size_t k, const ShadowPair& p) {
    const auto v = verify_shadows(b.state, ParticipantId{k}, p);
    EXPECT_FALSE(v.accepted);
    return v.reason;
  };
  EXPECT_EQ(reason(1, {s1.y1, s1.y1}), CheatReason::DependentShadows);
  EXPECT_EQ(reason(1, {s1.y1, s1.y1.scaled(3)}), CheatReason::DependentShadows);
  EXPECT_EQ(reason(2, s1), CheatReason::EigenvalueMismatch);
  EXPECT_EQ(reason(1, {s1.y1 + b.shadows[1].y1, s1.y2}), CheatReason::NotEigenvector);
  EXPECT_EQ(reason(1, {FieldVector(kZ7, {1, 2}), s1.y2}), CheatReason::NotEigenvector);
  EXPECT_EQ(reason(1, {FieldVector(ff::Modulus(5), 8), s1.y2}), CheatReason::NotEigenvector);
  EXPECT_THROW((void)verify_shadows(b.state, ParticipantId{5}, s1), InvalidArgument);
}

TEST(IdentifyAndRelease, AllHonestFirstStructure) {
  const auto b = example_build();
  const auto out = identify_and_release(b.state, honest_submissions(b, {1, 2, 3}), example::gamma1());
  EXPECT_FALSE(out.report.aborted);
  EXPECT_TRUE(out.report.cheaters().empty());
  EXPECT_EQ(out.released, (std::map<ParticipantId, ff::Element>{{{1}, 4}, {{2}, 5}, {{3}, 6}}));
}

TEST(IdentifyAndRelease, CheaterBreakingAuthorizationAborts) {
  const auto b = example_build();
  auto subs = honest_submissions(b, {1, 2, 3});
  Rng rng(5);
  subs.insert_or_assign(ParticipantId{3}, ShadowPair{testing::random_vector(kZ7, 8, rng), testing::random_vector(kZ7, 8, rng)});
  const auto out = identify_and_release(b.state, subs, example::gamma1());
  EXPECT_TRUE(out.report.aborted);
  EXPECT_EQ(out.report.cheaters(), std::vector<ParticipantId>{ParticipantId{3}});
  EXPECT_EQ(out.report.honest, (ParticipantSet{1, 2}));
  EXPECT_TRUE(out.released.empty());
}

TEST(IdentifyAndRelease, CheaterEliminatedWhileRemainderStaysAuthorized) {
  const auto b = example_build();
  auto subs = honest_submissions(b, {1, 2, 3, 4});
  subs.insert_or_assign(ParticipantId{4}, b.shadows[0]);
  const auto out = identify_and_release(b.state, subs, example::gamma1());
  EXPECT_FALSE(out.report.aborted);
  ASSERT_EQ(out.report.verdicts.size(), 4u);
  EXPECT_FALSE(out.report.verdicts[3].honest);
  EXPECT_EQ(out.report.verdicts[3].reason, CheatReason::EigenvalueMismatch);
  EXPECT_EQ(out.report.honest, (ParticipantSet{1, 2, 3}));
  EXPECT_EQ(out.released.size(), 3u);
  EXPECT_FALSE(out.released.contains(ParticipantId{4}));
}

TEST(IdentifyAndRelease, ReplayedPairIsJudgedAgainstTheSubmittersShare) {
  const auto b = example_build();
  auto subs = honest_submissions(b, {1, 2, 3, 4});
  subs.insert_or_assign(ParticipantId{2}, b.shadows[0]);  // P2 replays P1's pair
  const auto out = identify_and_release(b.state, subs, example::gamma2());
  EXPECT_TRUE(out.report.verdicts[0].honest);
  EXPECT_FALSE(out.report.verdicts[1].honest);
  EXPECT_EQ(out.report.verdicts[1].reason, CheatReason::EigenvalueMismatch);
  EXPECT_TRUE(out.report.aborted);
}

TEST(IdentifyAndRelease, EqualSharesAcceptEachOthersPairs) {
  const auto b = build_blackbox_with(FieldVector(kZ7, {3, 3}), ff::FieldMatrix::identity(kZ7, 4));
  std::map<ParticipantId, ShadowPair> subs{{{1}, b.shadows[1]}, {{2}, b.shadows[0]}};
  const auto out = identify_and_release(b.state, subs, AccessStructure({ParticipantSet{1, 2}}));
  EXPECT_FALSE(out.report.aborted);
  EXPECT_TRUE(out.report.cheaters().empty());
}

TEST(IdentifyAndRelease, EmptySubmissionAborts) {
  const auto b = example_build();
  const auto out = identify_and_release(b.state, {}, example::gamma1());
  EXPECT_TRUE(out.report.aborted);
  EXPECT_TRUE(out.released.empty());
}

class BlackBoxProperties : public ::testing::TestWithParam<std::uint64_t> {};

TEST_P(BlackBoxProperties, IssuedPairsAlwaysVerify) {
  const ff::Modulus mod(GetParam());
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    Rng rng(seed);
    const std::size_t m = 1 + rng.below(5);
    const auto shares = testing::random_vector(mod, m, rng);
    const auto b = build_blackbox(shares, rng);
    for (std::size_t k = 1; k <= m; ++k) {
      const auto& pair = b.shadows[k - 1];
      const auto& x = b.state.x_matrix();
      EXPECT_TRUE((ff::mat_vec(x, pair.y1) - pair.y1.scaled(shares[k - 1])).is_zero());
      EXPECT_TRUE((ff::mat_vec(x, pair.y2) - pair.y2.scaled(shares[k - 1])).is_zero());
      EXPECT_TRUE(verify_shadows(b.state, ParticipantId{k}, pair).accepted);
    }
  }
}

TEST(BlackBoxSoundness, RandomPairsAreRejectedAtModerateSize) {
  // With distinct shares a random pair passes with probability d^(4-4m).
  for (std::uint64_t d : {5u, 7u}) {
    const ff::Modulus mod(d);
    const auto b = build_blackbox_with(FieldVector(mod, {1, 2, 3}), [&] {
      Rng rng(d);
      return ff::random_invertible(mod, 6, rng);
    }());
    Rng rng(100 + d);
    int accepted = 0;
    for (int trial = 0; trial < 5000; ++trial) {
      const ShadowPair p{testing::random_vector(mod, 6, rng), testing::random_vector(mod, 6, rng)};
      accepted += verify_shadows(b.state, ParticipantId{1 + rng.below(3)}, p).accepted;
    }
    EXPECT_EQ(accepted, 0) << "d=" << d;
  }
}

TEST(BlackBoxSoundness, SmallestFieldAcceptsAtTheEigenspaceRate) {
  // d = 3, m = 2: the target eigenspace is 2-dimensional in Z_3^4, so a
  // random vector lands in it with probability 1/9.
  const ff::Modulus mod(3);
  const auto b = build_blackbox_with(FieldVector(mod, {1, 2}), [&] {
    Rng rng(3);
    return ff::random_invertible(mod, 4, rng);
  }());
  Rng rng(17);
  const int trials = 20000;
  int accepted = 0;
  for (int trial = 0; trial < trials; ++trial) {
    const ShadowPair p{testing::random_vector(mod, 4, rng), testing::random_vector(mod, 4, rng)};
    accepted += verify_shadows(b.state, ParticipantId{1}, p).accepted;
  }
  // Both vectors in the plane and independent: (9-1)(9-3) of 81^2 ordered pairs.
  const double p_accept = 48.0 / 6561.0;
  const double mean = trials * p_accept;
  const double sigma = std::sqrt(trials * p_accept * (1 - p_accept));
  EXPECT_NEAR(accepted, mean, 5 * sigma);
}

TEST_P(BlackBoxProperties, ReleaseHappensExactlyWhenHonestSetIsAuthorized) {
  const ff::Modulus mod(GetParam());
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    Rng rng(seed);
    const std::size_t m = 2 + rng.below(4);
    const auto b = build_blackbox(testing::random_vector(mod, m, rng), rng);
    const auto gamma = AccessStructure::from_authorized(
        {ParticipantSet::from_bits(1 + rng.below((1U << m) - 1))});
    std::map<ParticipantId, ShadowPair> subs;
    for (std::size_t k = 1; k <= m; ++k) {
      auto pair = b.shadows[k - 1];
      if (rng.below(3) == 0) pair.y2 = pair.y1;  // dependent: always a cheat
      subs.emplace(ParticipantId{k}, pair);
    }
    const auto out = identify_and_release(b.state, subs, gamma);
    EXPECT_EQ(out.report.aborted, !gamma.is_authorized(out.report.honest));
    EXPECT_EQ(out.released.size(), out.report.aborted ? 0 : out.report.honest.size());
  }
}

INSTANTIATE_TEST_SUITE_P(SmallPrimes, BlackBoxProperties, ::testing::Values(2, 3, 5, 7));

}  // namespace
}  // namespace qmss
