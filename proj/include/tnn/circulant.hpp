#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "tnn/tensor.hpp"

namespace tnn {

/// Caps the number of entries a materialized circulant matrix may have.
/// These matrices exist for dense verification at small scale only.
struct OracleBudget {
  std::size_t max_elements = std::size_t{1} << 24;

  bool allows(std::size_t rows, std::size_t cols) const noexcept {
    return cols == 0 || rows <= max_elements / cols;
  }
};

/// (n1*n3) x (n2*n3) block-circulant matrix; block (r, c) is frontal slice (r - c) mod n3.
Matrix bcirc(const Tensor3& t, OracleBudget budget = {});

/// Frontal slices stacked vertically: (n1*n3) x n2.
Matrix bvec(const Tensor3& t);
Tensor3 bvfold(const Matrix& m, Dims dims);

/// Frontal slices on the block diagonal: (n1*n3) x (n2*n3).
Matrix bdiag(const Tensor3& t);
Tensor3 bdfold(const Matrix& m, Dims dims);

/// Circulant-block matricization of an m x n x k tensor: an m x n grid of
/// k x k circulant blocks, block (i, j) generated by the fiber t(i, j, :).
Matrix circ(const Tensor3& t, OracleBudget budget = {});

/// Index maps relating circ and bcirc: circ(t)(r, c) == bcirc(t)(rows[r], cols[c]).
struct StridePermutation {
  std::vector<std::size_t> rows;
  std::vector<std::size_t> cols;
};
StridePermutation circ_from_bcirc(Dims dims);

/// Cyclic convolution (a o b)(i) = sum_j a(j) * b((i - j) mod n).
std::vector<double> circular_convolve(std::span<const double> a, std::span<const double> b);

/// t-product through the materialized block-circulant matrix: bvfold(bcirc(x) * bvec(y)).
Tensor3 t_product_direct(const Tensor3& x, const Tensor3& y, OracleBudget budget = {});

/// t-product with every scalar product replaced by a cyclic convolution of mode-3 fibers.
Tensor3 t_product_convolution(const Tensor3& x, const Tensor3& y);

/// t-product as slice-wise matrix products in the Fourier domain.
Tensor3 t_product(const Tensor3& x, const Tensor3& y);

/// Transposes every frontal slice and reverses the order of slices 2..n3.
Tensor3 tensor_transpose(const Tensor3& t);

/// First frontal slice is I_n, the rest are zero.
Tensor3 identity_tensor(std::size_t n, std::size_t n3);

/// Both Q^T * Q and Q * Q^T are within `tol` (Frobenius) of the identity tensor.
bool is_orthogonal(const Tensor3& q, double tol);
/// max(||Q^T * Q - I||_F, ||Q * Q^T - I||_F); throws for non-square slices.
double orthogonality_residual(const Tensor3& q);

/// Every off-diagonal entry of every frontal slice has magnitude <= tol.
bool is_f_diagonal(const Tensor3& t, double tol = 0.0);

}  // namespace tnn
