#include <gtest/gtest.h>

#include <random>

#include "support.hpp"
#include "tnn/circulant.hpp"
#include "tnn/fourier.hpp"
#include "tnn/tsvd.hpp"

using namespace tnn;
using tnn::testing::gaussian;
using tnn::testing::random_dims;

TEST(Fourier, MatchesDirectSummation) {
  std::mt19937_64 gen(21);
  for (int trial = 0; trial < 30; ++trial) {
    const Tensor3 t = gaussian(random_dims(gen, 1, 9), gen);
    const FourierStack f = fft_mode3(t);
    const auto ref = tnn::testing::direct_dft(t);
    for (std::size_t k = 0; k < t.dims().n3; ++k) EXPECT_LT((f.slices[k] - ref[k]).norm(), 1e-12 * (1 + ref[k].norm()));
  }
}

TEST(Fourier, ConjugateSymmetryIsExact) {
  std::mt19937_64 gen(22);
  for (int trial = 0; trial < 30; ++trial) {
    const Tensor3 t = gaussian(random_dims(gen, 1, 9), gen);
    const FourierStack f = fft_mode3(t);
    EXPECT_EQ(f.symmetry_defect(), 0.0);
    EXPECT_EQ(f.slices[0].imag().norm(), 0.0);
    if (t.dims().n3 % 2 == 0) {
      EXPECT_EQ(f.slices[t.dims().n3 / 2].imag().norm(), 0.0);
    }
  }
}

TEST(Fourier, InverseAndParseval) {
  std::mt19937_64 gen(23);
  for (int trial = 0; trial < 30; ++trial) {
    const Tensor3 t = gaussian(random_dims(gen, 1, 9), gen);
    const FourierStack f = fft_mode3(t);
    double residue = -1.0;
    const Tensor3 back = ifft_mode3(f, &residue);
    EXPECT_LT(tnn::testing::rel_diff(back, t), 1e-13);
    EXPECT_LT(residue, 1e-14);
    const double n3 = static_cast<double>(t.dims().n3);
    EXPECT_NEAR(fro_norm(f) * fro_norm(f) / n3, fro_norm(t) * fro_norm(t), 1e-11 * fro_norm(t) * fro_norm(t));
  }
}

TEST(Fourier, SingleSliceIsIdentity) {
  std::mt19937_64 gen(24);
  const Tensor3 t = gaussian({3, 4, 1}, gen);
  const FourierStack f = fft_mode3(t);
  EXPECT_EQ(f.slices[0].real(), frontal_slice(t, 0));
  EXPECT_EQ(ifft_mode3(f), t);
}

class TsvdProperties : public ::testing::TestWithParam<SpectrumMode> {};

TEST_P(TsvdProperties, ContractOnRandomShapes) {
  std::mt19937_64 gen(31);
  for (int trial = 0; trial < 40; ++trial) {
    const Tensor3 t = gaussian(random_dims(gen, 1, 7), gen);
    const Dims d = t.dims();
    const TSvdFactors f = tsvd(t, GetParam());
    EXPECT_EQ(f.u.dims(), (Dims{d.n1, d.n1, d.n3}));
    EXPECT_EQ(f.s.dims(), d);
    EXPECT_EQ(f.v.dims(), (Dims{d.n2, d.n2, d.n3}));
    EXPECT_LT(tnn::testing::rel_diff(reconstruct(f), t), 1e-12);
    EXPECT_LT(orthogonality_residual(f.u), 1e-10);
    EXPECT_LT(orthogonality_residual(f.v), 1e-10);
    EXPECT_TRUE(is_f_diagonal(f.s));
    EXPECT_LT(f.imag_residue, 1e-14);
    EXPECT_EQ(f.svd_calls, GetParam() == SpectrumMode::full ? d.n3 : d.n3 / 2 + 1);
    // Fourier diagonals are nonnegative and nonincreasing
    const FourierStack sf = fft_mode3(f.s);
    for (const auto& m : sf.slices) {
      const Eigen::Index r = std::min(m.rows(), m.cols());
      for (Eigen::Index i = 0; i < r; ++i) {
        EXPECT_GE(m(i, i).real(), -1e-12);
        if (i + 1 < r) {
          EXPECT_GE(m(i, i).real() + 1e-12, m(i + 1, i + 1).real());
        }
      }
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Modes, TsvdProperties, ::testing::Values(SpectrumMode::full, SpectrumMode::half));

TEST(Tsvd, HalfMatchesFull) {
  std::mt19937_64 gen(32);
  for (int trial = 0; trial < 25; ++trial) {
    const Tensor3 t = gaussian(random_dims(gen, 1, 7), gen);
    const TSvdFactors full = tsvd(t), half = tsvd_half(t);
    EXPECT_LE(tnn::testing::rel_diff(half.s, full.s), 1e-12);
    EXPECT_LE(tnn::testing::rel_diff(reconstruct(half), reconstruct(full)), 1e-12);
  }
}

TEST(Tsvd, SingularValuesMatchDenseSlices) {
  std::mt19937_64 gen(33);
  const Tensor3 t = gaussian({4, 3, 5}, gen);
  const auto ref = tnn::testing::direct_dft(t);
  const auto sv = fourier_singular_values(fft_mode3(t), SpectrumMode::full);
  for (std::size_t k = 0; k < 5; ++k) {
    const Eigen::VectorXd expect = Eigen::JacobiSVD<Eigen::MatrixXcd>(ref[k]).singularValues();
    EXPECT_LT((sv[k] - expect).norm(), 1e-12);
  }
}

TEST(Tsvd, ZeroTensor) {
  const Tensor3 z({3, 2, 4});
  const TSvdFactors f = tsvd_half(z);
  EXPECT_EQ(fro_norm(f.s), 0.0);
  EXPECT_EQ(fro_norm(reconstruct(f)), 0.0);
  EXPECT_LT(orthogonality_residual(f.u), 1e-12);
}

TEST(Tsvd, NonFiniteSliceReportsIndex) {
  FourierStack f(Dims{2, 2, 3});
  for (auto& s : f.slices) s = CMatrix::Identity(2, 2);
  f.slices[2](0, 1) = std::numeric_limits<double>::quiet_NaN();
  try {
    fourier_svd(f, SpectrumMode::full);
    FAIL() << "expected SliceSvdError";
  } catch (const SliceSvdError& e) {
    EXPECT_EQ(e.slice(), 2u);
  }
}

TEST(MultiRank, BoundedByFactorWidth) {
  std::mt19937_64 gen(34);
  for (std::size_t r = 1; r <= 4; ++r) {
    const Tensor3 a = gaussian({6, r, 5}, gen), b = gaussian({r, 7, 5}, gen);
    const auto mr = multi_rank(t_product(a, b), 1e-8);
    ASSERT_EQ(mr.size(), 5u);
    for (auto v : mr) EXPECT_EQ(v, r);
  }
  const auto full = multi_rank(gaussian({3, 5, 4}, gen));
  for (auto v : full) EXPECT_EQ(v, 3u);
  for (auto v : multi_rank(Tensor3({2, 2, 2}))) EXPECT_EQ(v, 0u);
}
