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

// Exact arithmetic over Z_d: elementwise ops, elimination, inverses,
// null spaces and eigenvector checks.

#include <gtest/gtest.h>

#include <set>

#include "qmss/example_scenario.hpp"
#include "test_support.hpp"

namespace qmss::ff {
namespace {

using qmss::example::kZ7;

FieldMatrix recomputed_x() {
  const auto y = example::y_matrix();
  const auto sigma = share_diagonal(FieldVector(kZ7, {4, 5, 6, 3}));
  return mat_mul(mat_mul(mat_inverse(y), sigma), y);
}

TEST(Modulus, RejectsCompositeAndTinyModuli) {
  EXPECT_THROW(Modulus(0), InvalidArgument);
  EXPECT_THROW(Modulus(1), InvalidArgument);
  EXPECT_THROW(Modulus(4), InvalidArgument);
  EXPECT_THROW(Modulus(9991), InvalidArgument);  // 97 * 103
  EXPECT_NO_THROW(Modulus(2));
  EXPECT_NO_THROW(Modulus(9973));
}

TEST(Modulus, ReducesNegativeResidues) {
  const Modulus m(7);
  EXPECT_EQ(m.reduce(-1), 6u);
  EXPECT_EQ(m.reduce(-2), 5u);
  EXPECT_EQ(m.reduce(-14), 0u);
  EXPECT_EQ(m.reduce(33), 5u);
}

TEST(Modulus, InverseAgreesWithExhaustiveSearch) {
  for (std::uint64_t d : {2u, 3u, 5u, 7u, 11u, 13u}) {
    const Modulus m(d);
    for (Element a = 1; a < d; ++a) {
      Element brute = 0;
      for (Element b = 1; b < d; ++b) {
        if ((a * b) % d == 1) brute = b;
      }
      EXPECT_EQ(m.inv(a), brute) << "d=" << d << " a=" << a;
    }
    EXPECT_THROW((void)m.inv(0), InvalidArgument);
  }
}

TEST(Modulus, PowMatchesRepeatedMultiplication) {
  const Modulus m(13);
  for (Element a = 0; a < 13; ++a) {
    Element acc = 1;
    for (std::uint64_t e = 0; e < 20; ++e) {
      EXPECT_EQ(m.pow(a, e), acc);
      acc = acc * a % 13;
    }
  }
}

TEST(FieldVector, NormalizesAndCompares) {
  const FieldVector v(kZ7, {0, 0, 1, 0, 0, -1, 0, 0});
  EXPECT_EQ(v[5], 6u);
  EXPECT_EQ(v, FieldVector(kZ7, {0, 0, 1, 0, 0, 6, 0, 0}));
  EXPECT_EQ(v.to_string(), "(0,0,1,0,0,6,0,0)");
  EXPECT_FALSE(v.is_zero());
  EXPECT_TRUE(FieldVector(kZ7, 3).is_zero());
}

TEST(FieldVector, MixedModuliAreRejected) {
  const FieldVector a(Modulus(5), {1, 2});
  const FieldVector b(kZ7, {1, 2});
  EXPECT_THROW((void)(a + b), ModulusMismatch);
  EXPECT_THROW((void)dot(a, b), ModulusMismatch);
}

TEST(MatVec, ExampleSharesFromRho) {
  const FieldVector rho(kZ7, {2, 5, 1, 4});
  EXPECT_EQ(mat_vec(example::m_matrix(), rho), FieldVector(kZ7, {4, 5, 6, 3}));
  EXPECT_EQ(mat_vec(FieldMatrix::identity(kZ7, 4), rho), rho);
  EXPECT_THROW((void)mat_vec(example::m_matrix(), FieldVector(kZ7, 3)), DimensionMismatch);
}

TEST(MatInverse, ExampleYRoundTripsToIdentity) {
  const auto y = example::y_matrix();
  const auto y_inv = mat_inverse(y);
  EXPECT_EQ(mat_mul(y, y_inv), FieldMatrix::identity(kZ7, 8));
  EXPECT_EQ(mat_mul(y_inv, y), FieldMatrix::identity(kZ7, 8));
  EXPECT_EQ(mat_inverse(FieldMatrix::identity(kZ7, 5)), FieldMatrix::identity(kZ7, 5));
}

TEST(MatInverse, SingularAndNonSquareInputsThrow) {
  EXPECT_THROW((void)mat_inverse(FieldMatrix(kZ7, 2, 2)), SingularMatrix);
  EXPECT_THROW((void)mat_inverse(FieldMatrix::from_rows(kZ7, {{1, 2}, {2, 4}})), SingularMatrix);
  EXPECT_THROW((void)mat_inverse(FieldMatrix(kZ7, 2, 3)), DimensionMismatch);
}

TEST(SolveLinear, UniqueRecombinationForThreeParticipants) {
  const auto a = example::m_matrix().select_rows(std::vector<std::size_t>{0, 1, 2}).transpose();
  const auto x = solve_linear(a, FieldVector::unit(kZ7, 4, 0));
  ASSERT_TRUE(x.has_value());
  EXPECT_EQ(*x, FieldVector(kZ7, {4, 3, 1}));
}

TEST(SolveLinear, UnderdeterminedSystemPicksLeftmostPivotSolution) {
  const auto a = example::m_matrix().transpose();
  const auto b = FieldVector::unit(kZ7, 4, 1);
  const auto x = solve_linear(a, b);
  ASSERT_TRUE(x.has_value());
  EXPECT_EQ(mat_vec(a, *x), b);
  EXPECT_EQ(*x, FieldVector(kZ7, {6, 1, 3, 0}));  // free variable x4 = 0
  // Another member of the same solution family.
  EXPECT_EQ(mat_vec(a, FieldVector(kZ7, {0, 6, 0, 1})), b);
}

TEST(SolveLinear, IdentityAndInconsistentSystems) {
  const FieldVector v(kZ7, {3, 1, 4});
  EXPECT_EQ(solve_linear(FieldMatrix::identity(kZ7, 3), v), v);
  const auto a = FieldMatrix::from_rows(kZ7, {{1, 1}, {2, 2}});
  EXPECT_FALSE(solve_linear(a, FieldVector(kZ7, {1, 3})).has_value());
}

TEST(Nullspace, EigenspaceOfFirstShareIsSpannedByItsShadows) {
  const auto basis = nullspace_basis(minus_scalar_identity(recomputed_x(), 4));
  ASSERT_EQ(basis.size(), 2u);
  const FieldVector y11(kZ7, {0, 0, 1, 0, 0, -1, 0, 0});
  const FieldVector y12(kZ7, {0, 0, 0, 1, 0, 0, 0, 0});
  // span{basis} = span{y11, y12}: adding either one keeps the rank at 2.
  EXPECT_EQ(rank(FieldMatrix::from_columns(std::vector{basis[0], basis[1], y11, y12})), 2u);
}

TEST(Nullspace, TrivialCases) {
  EXPECT_TRUE(nullspace_basis(FieldMatrix::identity(kZ7, 4)).empty());
  EXPECT_EQ(nullspace_basis(FieldMatrix(kZ7, 1, 3)).size(), 3u);
}

TEST(LinearIndependence, Examples) {
  const FieldVector y11(kZ7, {0, 0, 1, 0, 0, -1, 0, 0});
  const FieldVector y12(kZ7, {0, 0, 0, 1, 0, 0, 0, 0});
  EXPECT_TRUE(is_linearly_independent({y11, y12}));
  EXPECT_FALSE(is_linearly_independent({y11, y11}));
  EXPECT_FALSE(is_linearly_independent({y11, y11.scaled(2)}));
  EXPECT_FALSE(is_linearly_independent({y11, FieldVector(kZ7, 8)}));
}

TEST(RandomInvertible, OneByOneIsNonzero) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    Rng rng(seed);
    const auto a = random_invertible(kZ7, 1, rng);
    EXPECT_NE(a(0, 0), 0u);
  }
}

TEST(RandomInvertible, BinaryTwoByTwoCoversExactlyGL2) {
  // Brute-force oracle: the 2x2 matrices over Z_2 with nonzero determinant.
  const Modulus two(2);
  std::set<std::vector<Element>> gl2;
  for (unsigned bits = 0; bits < 16; ++bits) {
    const Element a = bits & 1, b = (bits >> 1) & 1, c = (bits >> 2) & 1, d = (bits >> 3) & 1;
    if ((a * d + b * c) % 2 == 1) gl2.insert({a, b, c, d});
  }
  ASSERT_EQ(gl2.size(), 6u);
  std::set<std::vector<Element>> seen;
  for (std::uint64_t seed = 0; seed < 400; ++seed) {
    Rng rng(seed);
    const auto m = random_invertible(two, 2, rng);
    const std::vector<Element> flat(m.data().begin(), m.data().end());
    EXPECT_TRUE(gl2.contains(flat));
    seen.insert(flat);
  }
  EXPECT_EQ(seen, gl2);
}

TEST(RandomInvertible, DeterministicPerSeed) {
  Rng a(42), b(42);
  const auto x = random_invertible(kZ7, 8, a);
  EXPECT_EQ(x, random_invertible(kZ7, 8, b));
  EXPECT_EQ(mat_mul(x, mat_inverse(x)), FieldMatrix::identity(kZ7, 8));
}

TEST(Eigenvalue, ShadowOfSecondParticipant) {
  const auto x = recomputed_x();
  EXPECT_EQ(eigenvalue_for_vector(x, FieldVector(kZ7, {1, 0, 0, 0, 0, 0, 0, -1})), 5u);
  const auto mixed = FieldVector(kZ7, {0, 0, 1, 0, 0, -1, 0, 0}) +
                     FieldVector(kZ7, {1, 0, 0, 0, 0, 0, 0, -1});
  EXPECT_FALSE(eigenvalue_for_vector(x, mixed).has_value());
}

TEST(Eigenvalue, IdentityAndZeroVector) {
  const auto id = FieldMatrix::identity(kZ7, 3);
  EXPECT_EQ(eigenvalue_for_vector(id, FieldVector(kZ7, {0, 5, 2})), 1u);
  EXPECT_THROW((void)eigenvalue_for_vector(id, FieldVector(kZ7, 3)), ZeroVector);
  EXPECT_THROW((void)eigenvalue_for_vector(id, FieldVector(kZ7, 4)), DimensionMismatch);
}

// ---------------------------------------------------------------------------
// Properties over random inputs.

class FieldProperties : public ::testing::TestWithParam<std::uint64_t> {};

TEST_P(FieldProperties, InverseIsExactTwoSided) {
  const Modulus mod(GetParam());
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    Rng rng(seed);
    const std::size_t n = 1 + rng.below(7);
    const auto a = random_invertible(mod, n, rng);
    const auto inv = mat_inverse(a);
    ASSERT_EQ(mat_mul(a, inv), FieldMatrix::identity(mod, n));
    ASSERT_EQ(mat_mul(inv, a), FieldMatrix::identity(mod, n));
  }
}

TEST_P(FieldProperties, SolutionsSatisfyTheirSystem) {
  const Modulus mod(GetParam());
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Rng rng(seed);
    const std::size_t r = 1 + rng.below(5), c = 1 + rng.below(5);
    const auto a = testing::random_matrix(mod, r, c, rng);
    // Half the right-hand sides are consistent by construction.
    const auto b = seed % 2 ? mat_vec(a, testing::random_vector(mod, c, rng))
                            : testing::random_vector(mod, r, rng);
    const auto x = solve_linear(a, b);
    if (seed % 2) {
      ASSERT_TRUE(x.has_value());
    }
    if (x) {
      ASSERT_EQ(mat_vec(a, *x), b);
    }
    const auto kernel = nullspace_basis(a);
    EXPECT_EQ(kernel.size() + rank(a), c);
    for (const auto& v : kernel) EXPECT_TRUE(mat_vec(a, v).is_zero());
    if (!kernel.empty()) EXPECT_TRUE(is_linearly_independent(kernel));
  }
}

TEST_P(FieldProperties, ReportedEigenvalueIsGenuine) {
  const Modulus mod(GetParam());
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Rng rng(seed);
    const auto x = testing::random_matrix(mod, 3, 3, rng);
    auto v = testing::random_vector(mod, 3, rng);
    if (v.is_zero()) v.set(0, 1);
    if (const auto s = eigenvalue_for_vector(x, v)) {
      EXPECT_TRUE((mat_vec(x, v) - v.scaled(*s)).is_zero());
    }
    // Every nonzero kernel vector of X - sI is accepted with eigenvalue s.
    const Element s = rng.below(mod.value());
    for (const auto& k : nullspace_basis(minus_scalar_identity(x, s))) {
      EXPECT_EQ(eigenvalue_for_vector(x, k), s);
    }
  }
}

INSTANTIATE_TEST_SUITE_P(SmallPrimes, FieldProperties, ::testing::Values(2, 3, 5, 7, 13));

}  // namespace
}  // namespace qmss::ff
