#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <json.hpp>

namespace qic {

using cplx = std::complex<double>;

// Largest row or column count any matrix may have.
inline constexpr std::size_t kMaxDim = 256;

// Validation and certification tolerances. The defaults are engineering
// choices; every entry point that uses one accepts an override.
struct Tolerances {
  double validation = 1e-10;
  double certification = 1e-8;
};

inline constexpr Tolerances kDefaultTol{};

// Dense complex matrix, row-major.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols);
  // Throws SizeError on a length mismatch and NonFiniteError on NaN/Inf.
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries);

  static ComplexMatrix zeros(std::size_t rows, std::size_t cols) { return {rows, cols}; }
  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix diagonal(std::span<const double> d);
  // |u><v|
  static ComplexMatrix outer(std::span<const cplx> u, std::span<const cplx> v);
  // Column vector.
  static ComplexMatrix column(std::span<const cplx> v);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }
  bool empty() const { return entries_.empty(); }

  cplx& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  const cplx& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

  std::span<const cplx> entries() const { return entries_; }
  std::span<cplx> entries() { return entries_; }

  std::vector<cplx> col(std::size_t c) const;
  void set_col(std::size_t c, std::span<const cplx> v);

  ComplexMatrix adjoint() const;
  ComplexMatrix transpose() const;
  ComplexMatrix conj() const;
  cplx trace() const;
  double frobenius_norm() const;
  double max_abs() const;
  // ||A - A^dagger||_F
  double hermiticity_defect() const;
  // (A + A^dagger) / 2
  ComplexMatrix hermitian_part() const;

  ComplexMatrix& operator+=(const ComplexMatrix& o);
  ComplexMatrix& operator-=(const ComplexMatrix& o);
  ComplexMatrix& operator*=(cplx s);

  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
  friend ComplexMatrix operator*(ComplexMatrix a, cplx s) { return a *= s; }
  friend ComplexMatrix operator*(cplx s, ComplexMatrix a) { return a *= s; }
  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cplx> entries_;
};

ComplexMatrix multiply(const ComplexMatrix& a, const ComplexMatrix& b);
std::vector<cplx> apply(const ComplexMatrix& a, std::span<const cplx> v);
cplx inner(std::span<const cplx> u, std::span<const cplx> v);  // <u|v>
double norm2(std::span<const cplx> v);

// Kronecker product: (i_a * rows_b + i_b, j_a * cols_b + j_b). Register 0
// is the most significant index position.
ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b);

// ||U^dagger U - I||_F
double unitarity_defect(const ComplexMatrix& u);

// Extends the given orthonormal columns to a full orthonormal basis of C^n
// by Gram-Schmidt against e_0, e_1, ... in order.
ComplexMatrix complete_orthonormal(const ComplexMatrix& partial);

// Unitary whose first column is the (normalized) vector v.
ComplexMatrix unitary_with_first_column(std::span<const cplx> v);

struct EigDecomposition {
  std::vector<double> eigenvalues;  // ascending
  ComplexMatrix eigenvectors;       // columns
};

// Cyclic Jacobi. Throws HermiticityError when ||a - a^dagger||_F exceeds
// tol * max(1, ||a||_F), ConvergenceError after kMaxJacobiSweeps sweeps.
inline constexpr int kMaxJacobiSweeps = 100;
EigDecomposition hermitian_eig(const ComplexMatrix& a, double tol = kDefaultTol.validation);

struct SvdResult {
  ComplexMatrix u;         // rows x k, orthonormal columns
  std::vector<double> s;   // k values, descending
  ComplexMatrix v;         // cols x k, orthonormal columns
};

// k = min(rows, cols). For square input u and v are full unitaries; columns
// belonging to zero singular values are completed deterministically.
SvdResult svd(const ComplexMatrix& a);

// Principal square root of a PSD matrix. Eigenvalues in [-tol, 0) are
// clamped to zero; anything more negative throws NotPsdError.
ComplexMatrix psd_sqrt(const ComplexMatrix& a, double tol = kDefaultTol.validation);

enum class Keep { H, K };

// Partial trace over the factor not kept, under the tensor() convention.
ComplexMatrix partial_trace(const ComplexMatrix& a, std::size_t dim_h, std::size_t dim_k, Keep keep);

// {"rows": n, "cols": m, "entries": [[re, im], ...]}
nlohmann::json to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const nlohmann::json& j);
nlohmann::json vector_to_json(std::span<const cplx> v);
std::vector<cplx> vector_from_json(const nlohmann::json& j);

}  // namespace qic
