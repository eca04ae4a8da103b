#include <gtest/gtest.h>

#include <random>

#include "support.hpp"
#include "tnn/circulant.hpp"
#include "tnn/tsvd.hpp"

using namespace tnn;
using tnn::testing::gaussian;
using tnn::testing::random_dims;

TEST(Bcirc, MatchesDefinition) {
  std::mt19937_64 gen(41);
  for (int trial = 0; trial < 25; ++trial) {
    const Tensor3 t = gaussian(random_dims(gen, 1, 5), gen);
    EXPECT_EQ(bcirc(t), tnn::testing::naive_bcirc(t));
  }
}

TEST(Bcirc, TubeGivesCirculant) {
  // 1x1x3 tube [a b c] gives the circulant [[a c b],[b a c],[c b a]]
  const Tensor3 t({1, 1, 3}, {1.0, 2.0, 3.0});
  Matrix expect(3, 3);
  expect << 1, 3, 2, 2, 1, 3, 3, 2, 1;
  EXPECT_EQ(bcirc(t), expect);
  EXPECT_EQ(circ(t), expect);
}

TEST(Bcirc, BudgetIsEnforced) {
  const Tensor3 t({4, 4, 4});
  EXPECT_THROW(bcirc(t, OracleBudget{255}), BudgetError);
  EXPECT_NO_THROW(bcirc(t, OracleBudget{256}));
  EXPECT_THROW(circ(t, OracleBudget{0}), BudgetError);
  EXPECT_THROW(t_product_direct(t, t, OracleBudget{10}), BudgetError);
}

TEST(Blocks, UnfoldFoldPairs) {
  std::mt19937_64 gen(42);
  const Tensor3 t = gaussian({3, 2, 4}, gen);
  const Matrix bv = bvec(t);
  ASSERT_EQ(bv.rows(), 12);
  EXPECT_EQ(bv.block(6, 0, 3, 2), frontal_slice(t, 2));
  EXPECT_EQ(bvfold(bv, t.dims()), t);
  const Matrix bd = bdiag(t);
  EXPECT_EQ(bd.block(3, 2, 3, 2), frontal_slice(t, 1));
  EXPECT_EQ(bd.block(3, 0, 3, 2), Matrix::Zero(3, 2));
  EXPECT_EQ(bdfold(bd, t.dims()), t);
  EXPECT_THROW(bvfold(bv, Dims{3, 2, 3}), DimensionError);
}

TEST(Circ, StridePermutationRelatesBothMatricizations) {
  std::mt19937_64 gen(43);
  for (int trial = 0; trial < 20; ++trial) {
    const Tensor3 t = gaussian(random_dims(gen, 1, 5), gen);
    const Matrix c = circ(t), b = tnn::testing::naive_bcirc(t);
    const auto p = circ_from_bcirc(t.dims());
    // both maps are bijections
    std::vector<bool> seen_r(p.rows.size()), seen_c(p.cols.size());
    for (auto r : p.rows) seen_r.at(r) = true;
    for (auto col : p.cols) seen_c.at(col) = true;
    EXPECT_TRUE(std::all_of(seen_r.begin(), seen_r.end(), [](bool v) { return v; }));
    EXPECT_TRUE(std::all_of(seen_c.begin(), seen_c.end(), [](bool v) { return v; }));
    for (Eigen::Index r = 0; r < c.rows(); ++r)
      for (Eigen::Index col = 0; col < c.cols(); ++col) ASSERT_EQ(c(r, col), b(p.rows[r], p.cols[col]));
    EXPECT_NEAR(tnn::testing::dense_nuclear(c), tnn::testing::dense_nuclear(b), 1e-10 * (1 + tnn::testing::dense_nuclear(b)));
  }
}

TEST(Convolution, MatchesDirectSum) {
  const std::vector<double> a{1, 2, 3}, b{4, 5, 6};
  // (a o b)(i) = sum_j a(j) b(i - j)
  EXPECT_EQ(circular_convolve(a, b), (std::vector<double>{1 * 4 + 2 * 6 + 3 * 5, 1 * 5 + 2 * 4 + 3 * 6, 1 * 6 + 2 * 5 + 3 * 4}));
  EXPECT_THROW(circular_convolve(a, std::vector<double>{1, 2}), DimensionError);
}

TEST(TProduct, ThreeRoutesAgreeWithDefinition) {
  std::mt19937_64 gen(44);
  for (int trial = 0; trial < 50; ++trial) {
    const Dims da = random_dims(gen, 1, 5);
    const std::size_t n4 = 1 + gen() % 5;
    const Tensor3 a = gaussian(da, gen), b = gaussian({da.n2, n4, da.n3}, gen);
    const Tensor3 ref = tnn::testing::naive_t_product(a, b);
    EXPECT_LT(tnn::testing::rel_diff(t_product_direct(a, b), ref), 1e-13);
    EXPECT_LT(tnn::testing::rel_diff(t_product_convolution(a, b), ref), 1e-13);
    EXPECT_LT(tnn::testing::rel_diff(t_product(a, b), ref), 1e-12);
  }
}

TEST(TProduct, AlgebraicLaws) {
  std::mt19937_64 gen(45);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n3 = 1 + gen() % 6;
    const Tensor3 a = gaussian({3, 4, n3}, gen), b = gaussian({4, 2, n3}, gen), c = gaussian({2, 5, n3}, gen);
    EXPECT_LT(tnn::testing::rel_diff(t_product(t_product(a, b), c), t_product(a, t_product(b, c))), 1e-12);
    EXPECT_LT(tnn::testing::rel_diff(tensor_transpose(t_product(a, b)),
                                     t_product(tensor_transpose(b), tensor_transpose(a))),
              1e-12);
    EXPECT_LT(tnn::testing::rel_diff(t_product(identity_tensor(3, n3), a), a), 1e-14);
    EXPECT_LT(tnn::testing::rel_diff(t_product(a, identity_tensor(4, n3)), a), 1e-14);
    EXPECT_EQ(tensor_transpose(tensor_transpose(a)), a);
    // bcirc is a homomorphism
    EXPECT_LT((bcirc(t_product(a, b)) - bcirc(a) * bcirc(b)).norm(), 1e-12 * (1 + bcirc(a).norm() * bcirc(b).norm()));
  }
  EXPECT_THROW(t_product(Tensor3({2, 3, 2}), Tensor3({2, 3, 2})), DimensionError);
  EXPECT_THROW(t_product(Tensor3({2, 3, 2}), Tensor3({3, 3, 4})), DimensionError);
}

TEST(Transpose, ReversesTrailingSlices) {
  const Tensor3 t({1, 2, 3}, {1, 2, 3, 4, 5, 6});
  const Tensor3 tt = tensor_transpose(t);
  EXPECT_EQ(tt.dims(), (Dims{2, 1, 3}));
  EXPECT_EQ(tt(0, 0, 0), 1);
  EXPECT_EQ(tt(1, 0, 0), 2);
  EXPECT_EQ(tt(0, 0, 1), 5);
  EXPECT_EQ(tt(0, 0, 2), 3);
  // bcirc(t^T) == bcirc(t)^T
  std::mt19937_64 gen(46);
  const Tensor3 r = gaussian({3, 4, 5}, gen);
  EXPECT_EQ(bcirc(tensor_transpose(r)), Matrix(bcirc(r).transpose()));
}

TEST(Orthogonality, Checks) {
  EXPECT_TRUE(is_orthogonal(identity_tensor(3, 4), 0.0));
  Tensor3 q = identity_tensor(2, 3);
  q(0, 1, 0) = 0.1;
  EXPECT_FALSE(is_orthogonal(q, 1e-3));
  EXPECT_THROW(orthogonality_residual(Tensor3({2, 3, 2})), DimensionError);
  Tensor3 d({2, 3, 2});
  d(1, 1, 1) = 5.0;
  EXPECT_TRUE(is_f_diagonal(d));
  d(0, 2, 0) = 1e-3;
  EXPECT_FALSE(is_f_diagonal(d));
  EXPECT_TRUE(is_f_diagonal(d, 1e-2));
}
