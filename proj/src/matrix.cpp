#include "qic/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "qic/errors.hpp"

namespace qic {

namespace {

void check_dims(std::size_t rows, std::size_t cols) {
  if (rows == 0 || cols == 0) throw SizeError("matrix dimensions must be positive");
  if (rows > kMaxDim || cols > kMaxDim) {
    throw SizeError("matrix dimension " + std::to_string(rows) + "x" + std::to_string(cols) +
                    " exceeds the cap of " + std::to_string(kMaxDim));
  }
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {
  check_dims(rows, cols);
  entries_.assign(rows * cols, cplx{});
}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  check_dims(rows, cols);
  if (entries_.size() != rows * cols) throw SizeError("entry count does not match rows x cols");
  for (const auto& z : entries_) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw NonFiniteError("matrix entries must be finite");
    }
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> d) {
  ComplexMatrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

ComplexMatrix ComplexMatrix::outer(std::span<const cplx> u, std::span<const cplx> v) {
  ComplexMatrix m(u.size(), v.size());
  for (std::size_t i = 0; i < u.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) m(i, j) = u[i] * std::conj(v[j]);
  return m;
}

ComplexMatrix ComplexMatrix::column(std::span<const cplx> v) {
  return ComplexMatrix(v.size(), 1, std::vector<cplx>(v.begin(), v.end()));
}

std::vector<cplx> ComplexMatrix::col(std::size_t c) const {
  std::vector<cplx> out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
  return out;
}

void ComplexMatrix::set_col(std::size_t c, std::span<const cplx> v) {
  if (v.size() != rows_) throw SizeError("column length mismatch");
  for (std::size_t r = 0; r < rows_; ++r) (*this)(r, c) = v[r];
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix m(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) m(c, r) = std::conj((*this)(r, c));
  return m;
}

ComplexMatrix ComplexMatrix::transpose() const {
  ComplexMatrix m(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) m(c, r) = (*this)(r, c);
  return m;
}

ComplexMatrix ComplexMatrix::conj() const {
  ComplexMatrix m = *this;
  for (auto& z : m.entries_) z = std::conj(z);
  return m;
}

cplx ComplexMatrix::trace() const {
  if (!square()) throw SizeError("trace of a non-square matrix");
  cplx t{};
  for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
  return t;
}

double ComplexMatrix::frobenius_norm() const {
  double s = 0.0;
  for (const auto& z : entries_) s += std::norm(z);
  return std::sqrt(s);
}

double ComplexMatrix::max_abs() const {
  double m = 0.0;
  for (const auto& z : entries_) m = std::max(m, std::abs(z));
  return m;
}

double ComplexMatrix::hermiticity_defect() const {
  if (!square()) throw SizeError("hermiticity of a non-square matrix");
  double s = 0.0;
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) s += std::norm((*this)(r, c) - std::conj((*this)(c, r)));
  return std::sqrt(s);
}

ComplexMatrix ComplexMatrix::hermitian_part() const {
  if (!square()) throw SizeError("hermitian part of a non-square matrix");
  ComplexMatrix m(rows_, cols_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) m(r, c) = 0.5 * ((*this)(r, c) + std::conj((*this)(c, r)));
  return m;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw SizeError("matrix sum dimension mismatch");
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] += o.entries_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw SizeError("matrix difference dimension mismatch");
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] -= o.entries_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cplx s) {
  for (auto& z : entries_) z *= s;
  return *this;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) { return multiply(a, b); }

ComplexMatrix multiply(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) throw SizeError("matrix product dimension mismatch");
  ComplexMatrix m(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const cplx aik = a(i, k);
      if (aik == cplx{}) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) m(i, j) += aik * b(k, j);
    }
  }
  return m;
}

std::vector<cplx> apply(const ComplexMatrix& a, std::span<const cplx> v) {
  if (a.cols() != v.size()) throw SizeError("matrix-vector dimension mismatch");
  std::vector<cplx> out(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    cplx s{};
    for (std::size_t k = 0; k < a.cols(); ++k) s += a(i, k) * v[k];
    out[i] = s;
  }
  return out;
}

cplx inner(std::span<const cplx> u, std::span<const cplx> v) {
  if (u.size() != v.size()) throw SizeError("inner product dimension mismatch");
  cplx s{};
  for (std::size_t i = 0; i < u.size(); ++i) s += std::conj(u[i]) * v[i];
  return s;
}

double norm2(std::span<const cplx> v) {
  double s = 0.0;
  for (const auto& z : v) s += std::norm(z);
  return std::sqrt(s);
}

ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b) {
  const std::size_t rows = a.rows() * b.rows();
  const std::size_t cols = a.cols() * b.cols();
  if (rows > kMaxDim || cols > kMaxDim) {
    throw SizeError("tensor product " + std::to_string(rows) + "x" + std::to_string(cols) +
                    " exceeds the cap of " + std::to_string(kMaxDim));
  }
  ComplexMatrix m(rows, cols);
  for (std::size_t ia = 0; ia < a.rows(); ++ia)
    for (std::size_t ja = 0; ja < a.cols(); ++ja) {
      const cplx x = a(ia, ja);
      if (x == cplx{}) continue;
      for (std::size_t ib = 0; ib < b.rows(); ++ib)
        for (std::size_t jb = 0; jb < b.cols(); ++jb)
          m(ia * b.rows() + ib, ja * b.cols() + jb) = x * b(ib, jb);
    }
  return m;
}

double unitarity_defect(const ComplexMatrix& u) {
  if (!u.square()) return std::numeric_limits<double>::infinity();
  return (u.adjoint() * u - ComplexMatrix::identity(u.rows())).frobenius_norm();
}

ComplexMatrix complete_orthonormal(const ComplexMatrix& partial) {
  const std::size_t n = partial.rows();
  ComplexMatrix out(n, n);
  std::size_t filled = 0;
  for (std::size_t c = 0; c < partial.cols(); ++c) out.set_col(filled++, partial.col(c));

  auto orthogonalize = [&](std::vector<cplx>& v) {
    // Two passes of modified Gram-Schmidt keep the result orthogonal to
    // machine precision.
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t k = 0; k < filled; ++k) {
        const auto basis = out.col(k);
        const cplx proj = inner(basis, v);
        for (std::size_t i = 0; i < n; ++i) v[i] -= proj * basis[i];
      }
    }
  };

  for (std::size_t e = 0; e < n && filled < n; ++e) {
    std::vector<cplx> v(n);
    v[e] = 1.0;
    orthogonalize(v);
    const double len = norm2(v);
    if (len < 1e-8) continue;
    for (auto& z : v) z /= len;
    out.set_col(filled++, v);
  }
  if (filled != n) throw ConvergenceError("orthonormal completion failed");
  return out;
}

ComplexMatrix unitary_with_first_column(std::span<const cplx> v) {
  const double len = norm2(v);
  if (len == 0.0) throw SizeError("cannot build a unitary from the zero vector");
  std::vector<cplx> unit(v.begin(), v.end());
  for (auto& z : unit) z /= len;
  return complete_orthonormal(ComplexMatrix::column(unit));
}

ComplexMatrix partial_trace(const ComplexMatrix& a, std::size_t dim_h, std::size_t dim_k, Keep keep) {
  if (!a.square() || dim_h == 0 || dim_k == 0 || a.rows() != dim_h * dim_k) {
    throw SizeError("partial trace: matrix is not " + std::to_string(dim_h * dim_k) + " square");
  }
  if (keep == Keep::H) {
    ComplexMatrix out(dim_h, dim_h);
    for (std::size_t i = 0; i < dim_h; ++i)
      for (std::size_t j = 0; j < dim_h; ++j) {
        cplx s{};
        for (std::size_t k = 0; k < dim_k; ++k) s += a(i * dim_k + k, j * dim_k + k);
        out(i, j) = s;
      }
    return out;
  }
  ComplexMatrix out(dim_k, dim_k);
  for (std::size_t k = 0; k < dim_k; ++k)
    for (std::size_t l = 0; l < dim_k; ++l) {
      cplx s{};
      for (std::size_t i = 0; i < dim_h; ++i) s += a(i * dim_k + k, i * dim_k + l);
      out(k, l) = s;
    }
  return out;
}

nlohmann::json vector_to_json(std::span<const cplx> v) {
  auto arr = nlohmann::json::array();
  for (const auto& z : v) arr.push_back({z.real(), z.imag()});
  return arr;
}

std::vector<cplx> vector_from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw FormatError("complex vector must be an array of [re, im] pairs");
  std::vector<cplx> out;
  out.reserve(j.size());
  for (const auto& e : j) {
    if (e.is_number()) {
      out.emplace_back(e.get<double>(), 0.0);
    } else if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number()) {
      out.emplace_back(e[0].get<double>(), e[1].get<double>());
    } else {
      throw FormatError("complex entry must be [re, im]");
    }
  }
  return out;
}

nlohmann::json to_json(const ComplexMatrix& m) {
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", vector_to_json(m.entries())}};
}

ComplexMatrix matrix_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("rows") || !j.contains("cols") || !j.contains("entries")) {
    throw FormatError("matrix JSON needs rows, cols and entries");
  }
  return ComplexMatrix(j.at("rows").get<std::size_t>(), j.at("cols").get<std::size_t>(),
                       vector_from_json(j.at("entries")));
}

}  // namespace qic
