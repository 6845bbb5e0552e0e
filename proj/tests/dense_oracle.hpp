#pragma once

// Test-only reference: materializes the N x N Grover operators from their
// projector definitions and multiplies them out. Independent of both the
// 3-dimensional engine and the in-place rank-one updates in full_oracle.

#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

#include "sure_search/geometry.hpp"
#include "sure_search/subspace.hpp"

namespace sure_search::dense {

class DenseMatrix {
 public:
  explicit DenseMatrix(std::size_t n) : n_(n), a_(n * n) {}

  static DenseMatrix identity(std::size_t n) {
    DenseMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  /// I - f |v><v|
  static DenseMatrix rank_one_update(const std::vector<Complex>& v, Complex f) {
    DenseMatrix m = identity(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
      for (std::size_t j = 0; j < v.size(); ++j) m(i, j) -= f * v[i] * std::conj(v[j]);
    return m;
  }

  std::size_t size() const { return n_; }
  Complex& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
  Complex operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }

  DenseMatrix operator*(const DenseMatrix& o) const {
    DenseMatrix out(n_);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t k = 0; k < n_; ++k)
        for (std::size_t j = 0; j < n_; ++j) out(i, j) += (*this)(i, k) * o(k, j);
    return out;
  }

  std::vector<Complex> operator*(const std::vector<Complex>& v) const {
    std::vector<Complex> out(n_);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) out[i] += (*this)(i, j) * v[j];
    return out;
  }

  DenseMatrix scaled(Complex s) const {
    DenseMatrix out = *this;
    for (auto& x : out.a_) x *= s;
    return out;
  }

 private:
  std::size_t n_;
  std::vector<Complex> a_;
};

struct DenseBasis {
  std::vector<Complex> sol, rest, rem, uniform;
  std::vector<std::vector<Complex>> blocks;
};

inline DenseBasis dense_basis(const SearchGeometry& g, std::int64_t solution) {
  const auto n = static_cast<std::size_t>(g.size);
  const auto b = static_cast<std::size_t>(g.block_size);
  const auto target = static_cast<std::size_t>(solution) / b;
  DenseBasis basis{std::vector<Complex>(n), std::vector<Complex>(n), std::vector<Complex>(n),
                   std::vector<Complex>(n, 1.0 / std::sqrt(double(n))), {}};
  basis.sol[static_cast<std::size_t>(solution)] = 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (i / b == target) {
      if (i != static_cast<std::size_t>(solution)) basis.rest[i] = 1.0 / std::sqrt(double(b - 1));
    } else {
      basis.rem[i] = 1.0 / std::sqrt(double(n - b));
    }
  }
  for (std::size_t k = 0; k < n / b; ++k) {
    std::vector<Complex> v(n);
    for (std::size_t i = k * b; i < (k + 1) * b; ++i) v[i] = 1.0 / std::sqrt(double(b));
    basis.blocks.push_back(v);
  }
  return basis;
}

inline DenseMatrix dense_oracle(const DenseBasis& basis) {
  return DenseMatrix::rank_one_update(basis.sol, 2.0);
}

inline DenseMatrix dense_global(const DenseBasis& basis) {
  return (DenseMatrix::rank_one_update(basis.uniform, 2.0) * dense_oracle(basis)).scaled(-1.0);
}

inline DenseMatrix dense_local(const DenseBasis& basis) {
  const std::size_t n = basis.sol.size();
  DenseMatrix reflect = DenseMatrix::identity(n).scaled(-1.0);
  for (const auto& v : basis.blocks)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) reflect(i, j) += 2.0 * v[i] * std::conj(v[j]);
  return reflect * dense_oracle(basis);
}

inline DenseMatrix dense_final(const DenseBasis& basis, double theta, double phi) {
  const DenseMatrix a = DenseMatrix::rank_one_update(basis.uniform, 1.0 - std::polar(1.0, 2.0 * theta));
  const DenseMatrix b = DenseMatrix::rank_one_update(basis.sol, 1.0 - std::polar(1.0, phi - theta));
  return (a * b).scaled(-1.0);
}

inline Complex inner(const std::vector<Complex>& u, const std::vector<Complex>& v) {
  Complex s = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) s += std::conj(u[i]) * v[i];
  return s;
}

/// <e_r| A |e_c> over the three invariant basis vectors.
inline SubspaceOperator project_operator(const DenseBasis& basis, const DenseMatrix& a) {
  const std::vector<Complex>* e[3] = {&basis.sol, &basis.rest, &basis.rem};
  SubspaceOperator out;
  for (int c = 0; c < 3; ++c) {
    const auto col = a * *e[c];
    for (int r = 0; r < 3; ++r) out(r, c) = inner(*e[r], col);
  }
  return out;
}

inline SubspaceState project_state(const DenseBasis& basis, const std::vector<Complex>& v) {
  return SubspaceState{inner(basis.sol, v), inner(basis.rest, v), inner(basis.rem, v)};
}

}  // namespace sure_search::dense
