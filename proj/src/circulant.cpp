#include "tnn/circulant.hpp"

#include <algorithm>

#include "tnn/fourier.hpp"

namespace tnn {

namespace {

void check_budget(const OracleBudget& budget, std::size_t rows, std::size_t cols, const char* what) {
  if (!budget.allows(rows, cols)) {
    throw BudgetError(std::string(what) + ": " + std::to_string(rows) + "x" + std::to_string(cols) +
                      " exceeds oracle budget of " + std::to_string(budget.max_elements) + " elements");
  }
}

std::size_t wrap(std::size_t r, std::size_t c, std::size_t n) { return (r + n - c) % n; }

}  // namespace

Matrix bcirc(const Tensor3& t, OracleBudget budget) {
  const auto [n1, n2, n3] = t.dims();
  check_budget(budget, n1 * n3, n2 * n3, "bcirc");
  Matrix out(n1 * n3, n2 * n3);
  for (std::size_t r = 0; r < n3; ++r)
    for (std::size_t c = 0; c < n3; ++c) out.block(r * n1, c * n2, n1, n2) = t.slice(wrap(r, c, n3));
  return out;
}

Matrix bvec(const Tensor3& t) {
  const auto [n1, n2, n3] = t.dims();
  Matrix out(n1 * n3, n2);
  for (std::size_t k = 0; k < n3; ++k) out.block(k * n1, 0, n1, n2) = t.slice(k);
  return out;
}

Tensor3 bvfold(const Matrix& m, Dims dims) {
  if (static_cast<std::size_t>(m.rows()) != dims.n1 * dims.n3 || static_cast<std::size_t>(m.cols()) != dims.n2) {
    throw DimensionError("bvfold: matrix shape does not match dims " + to_string(dims));
  }
  Tensor3 t(dims);
  for (std::size_t k = 0; k < dims.n3; ++k) t.slice(k) = m.block(k * dims.n1, 0, dims.n1, dims.n2);
  return t;
}

Matrix bdiag(const Tensor3& t) {
  const auto [n1, n2, n3] = t.dims();
  Matrix out = Matrix::Zero(n1 * n3, n2 * n3);
  for (std::size_t k = 0; k < n3; ++k) out.block(k * n1, k * n2, n1, n2) = t.slice(k);
  return out;
}

Tensor3 bdfold(const Matrix& m, Dims dims) {
  if (static_cast<std::size_t>(m.rows()) != dims.n1 * dims.n3 ||
      static_cast<std::size_t>(m.cols()) != dims.n2 * dims.n3) {
    throw DimensionError("bdfold: matrix shape does not match dims " + to_string(dims));
  }
  Tensor3 t(dims);
  for (std::size_t k = 0; k < dims.n3; ++k) t.slice(k) = m.block(k * dims.n1, k * dims.n2, dims.n1, dims.n2);
  return t;
}

Matrix circ(const Tensor3& t, OracleBudget budget) {
  const auto [m, n, k] = t.dims();
  check_budget(budget, m * k, n * k, "circ");
  Matrix out(m * k, n * k);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t r = 0; r < k; ++r)
        for (std::size_t c = 0; c < k; ++c) out(i * k + r, j * k + c) = t(i, j, wrap(r, c, k));
  return out;
}

StridePermutation circ_from_bcirc(Dims dims) {
  const auto [m, n, k] = dims;
  StridePermutation p;
  p.rows.resize(m * k);
  p.cols.resize(n * k);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t r = 0; r < k; ++r) p.rows[i * k + r] = r * m + i;
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t c = 0; c < k; ++c) p.cols[j * k + c] = c * n + j;
  return p;
}

std::vector<double> circular_convolve(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw DimensionError("circular_convolve: length mismatch");
  const std::size_t n = a.size();
  std::vector<double> out(n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out[i] += a[j] * b[wrap(i, j, n)];
  return out;
}

namespace {

void check_product_dims(const Dims& x, const Dims& y) {
  if (x.n2 != y.n1 || x.n3 != y.n3) {
    throw DimensionError("t-product: cannot multiply " + to_string(x) + " by " + to_string(y));
  }
}

}  // namespace

Tensor3 t_product_direct(const Tensor3& x, const Tensor3& y, OracleBudget budget) {
  check_product_dims(x.dims(), y.dims());
  const Matrix stacked = bcirc(x, budget) * bvec(y);
  return bvfold(stacked, Dims{x.dims().n1, y.dims().n2, x.dims().n3});
}

Tensor3 t_product_convolution(const Tensor3& x, const Tensor3& y) {
  check_product_dims(x.dims(), y.dims());
  const std::size_t n1 = x.dims().n1, n2 = x.dims().n2, n4 = y.dims().n2, n3 = x.dims().n3;
  Tensor3 out(Dims{n1, n4, n3});
  std::vector<double> a(n3), b(n3);
  for (std::size_t i = 0; i < n1; ++i) {
    for (std::size_t l = 0; l < n4; ++l) {
      for (std::size_t j = 0; j < n2; ++j) {
        for (std::size_t k = 0; k < n3; ++k) {
          a[k] = x(i, j, k);
          b[k] = y(j, l, k);
        }
        const auto c = circular_convolve(a, b);
        for (std::size_t k = 0; k < n3; ++k) out(i, l, k) += c[k];
      }
    }
  }
  return out;
}

Tensor3 t_product(const Tensor3& x, const Tensor3& y) {
  check_product_dims(x.dims(), y.dims());
  const FourierStack xf = fft_mode3(x);
  const FourierStack yf = fft_mode3(y);
  FourierStack mf(Dims{x.dims().n1, y.dims().n2, x.dims().n3});
  for (std::size_t k = 0; k < mf.half_count(); ++k) mf.slices[k].noalias() = xf.slices[k] * yf.slices[k];
  mf.mirror_upper_half();
  return ifft_mode3(mf);
}

Tensor3 tensor_transpose(const Tensor3& t) {
  const auto [n1, n2, n3] = t.dims();
  Tensor3 out(Dims{n2, n1, n3});
  for (std::size_t k = 0; k < n3; ++k) out.slice(k) = t.slice(k == 0 ? 0 : n3 - k).transpose();
  return out;
}

Tensor3 identity_tensor(std::size_t n, std::size_t n3) {
  Tensor3 out(Dims{n, n, n3});
  out.slice(0).setIdentity();
  return out;
}

double orthogonality_residual(const Tensor3& q) {
  const auto& d = q.dims();
  if (d.n1 != d.n2) throw DimensionError("orthogonality needs square frontal slices");
  const Tensor3 qt = tensor_transpose(q);
  const Tensor3 id = identity_tensor(d.n1, d.n3);
  return std::max(fro_norm(t_product(qt, q) - id), fro_norm(t_product(q, qt) - id));
}

bool is_orthogonal(const Tensor3& q, double tol) {
  if (q.dims().n1 != q.dims().n2) return false;
  return orthogonality_residual(q) <= tol;
}

bool is_f_diagonal(const Tensor3& t, double tol) {
  const auto [n1, n2, n3] = t.dims();
  for (std::size_t k = 0; k < n3; ++k)
    for (std::size_t j = 0; j < n2; ++j)
      for (std::size_t i = 0; i < n1; ++i)
        if (i != j && std::abs(t(i, j, k)) > tol) return false;
  return true;
}

}  // namespace tnn
