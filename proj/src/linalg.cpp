#include <algorithm>
#include <cmath>
#include <numeric>

#include "qic/errors.hpp"
#include "qic/matrix.hpp"

namespace qic {

namespace {

// Unitary J = [[c, s], [-s e, c e]] that diagonalizes the 2x2 Hermitian
// block [[alpha, gamma], [conj(gamma), beta]] as J^dagger G J.
struct Rotation {
  double c;
  double s;
  cplx e;  // exp(-i arg gamma)
  double t;
};

Rotation jacobi_rotation(double alpha, double beta, cplx gamma) {
  const double g = std::abs(gamma);
  const double tau = (beta - alpha) / (2.0 * g);
  const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
  const double c = 1.0 / std::sqrt(1.0 + t * t);
  return {c, t * c, std::conj(gamma) / g, t};
}

// A <- A J on columns p, q.
void rotate_cols(ComplexMatrix& a, std::size_t p, std::size_t q, const Rotation& r) {
  for (std::size_t i = 0; i < a.rows(); ++i) {
    const cplx ap = a(i, p);
    const cplx aq = a(i, q);
    a(i, p) = r.c * ap - r.s * r.e * aq;
    a(i, q) = r.s * ap + r.c * r.e * aq;
  }
}

// A <- J^dagger A on rows p, q.
void rotate_rows(ComplexMatrix& a, std::size_t p, std::size_t q, const Rotation& r) {
  const cplx ec = std::conj(r.e);
  for (std::size_t j = 0; j < a.cols(); ++j) {
    const cplx ap = a(p, j);
    const cplx aq = a(q, j);
    a(p, j) = r.c * ap - r.s * ec * aq;
    a(q, j) = r.s * ap + r.c * ec * aq;
  }
}

double off_diagonal_norm(const ComplexMatrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (i != j) s += std::norm(a(i, j));
  return std::sqrt(s);
}

SvdResult one_sided_jacobi(const ComplexMatrix& a) {
  // Requires rows >= cols.
  const std::size_t n = a.cols();
  ComplexMatrix w = a;
  ComplexMatrix v = ComplexMatrix::identity(n);
  const double orth_tol = 2.3e-16 * static_cast<double>(w.rows());
  // Columns this small are rounding noise; rotating them against each other
  // never settles, and they only feed the completed part of U anyway.
  const double fro = a.frobenius_norm();
  const double negligible = (1e-14 * fro) * (1e-14 * fro);

  bool converged = n == 1;
  for (int sweep = 0; sweep < kMaxJacobiSweeps && !converged; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        double alpha = 0.0, beta = 0.0;
        cplx gamma{};
        for (std::size_t i = 0; i < w.rows(); ++i) {
          alpha += std::norm(w(i, p));
          beta += std::norm(w(i, q));
          gamma += std::conj(w(i, p)) * w(i, q);
        }
        if (alpha <= negligible || beta <= negligible) continue;
        if (std::abs(gamma) <= orth_tol * std::sqrt(alpha * beta)) continue;
        const Rotation r = jacobi_rotation(alpha, beta, gamma);
        rotate_cols(w, p, q, r);
        rotate_cols(v, p, q, r);
        rotated = true;
      }
    }
    converged = !rotated;
  }
  if (!converged) throw ConvergenceError("one-sided Jacobi SVD did not converge");

  std::vector<double> norms(n);
  for (std::size_t j = 0; j < n; ++j) norms[j] = norm2(w.col(j));
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return norms[x] > norms[y]; });

  const double smax = norms[order[0]];
  SvdResult out;
  out.s.resize(n);
  out.v = ComplexMatrix(n, n);
  std::size_t kept = 0;
  for (std::size_t k = 0; k < n; ++k) {
    out.s[k] = norms[order[k]];
    out.v.set_col(k, v.col(order[k]));
    if (out.s[k] > 1e-13 * smax && out.s[k] > 0.0) ++kept;
  }

  // Columns of tiny singular values are too noisy to normalize; they are
  // replaced by a deterministic orthonormal completion.
  ComplexMatrix u_full = ComplexMatrix::identity(a.rows());
  if (kept > 0) {
    ComplexMatrix u_partial(a.rows(), kept);
    for (std::size_t k = 0; k < kept; ++k) {
      auto col = w.col(order[k]);
      for (auto& z : col) z /= out.s[k];
      u_partial.set_col(k, col);
    }
    u_full = complete_orthonormal(u_partial);
  }
  out.u = ComplexMatrix(a.rows(), n);
  for (std::size_t k = 0; k < n; ++k) out.u.set_col(k, u_full.col(k));
  return out;
}

}  // namespace

EigDecomposition hermitian_eig(const ComplexMatrix& a, double tol) {
  if (!a.square()) throw SizeError("eigendecomposition of a non-square matrix");
  const double scale = a.frobenius_norm();
  if (a.hermiticity_defect() > tol * std::max(1.0, scale)) {
    throw HermiticityError("matrix is not Hermitian within tolerance");
  }
  const std::size_t n = a.rows();
  ComplexMatrix w = a.hermitian_part();
  for (std::size_t i = 0; i < n; ++i) w(i, i) = w(i, i).real();
  ComplexMatrix v = ComplexMatrix::identity(n);

  const double target = 1e-15 * scale;
  bool converged = off_diagonal_norm(w) <= target;
  for (int sweep = 0; sweep < kMaxJacobiSweeps && !converged; ++sweep) {
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const cplx gamma = w(p, q);
        if (gamma == cplx{}) continue;
        const double alpha = w(p, p).real();
        const double beta = w(q, q).real();
        const Rotation r = jacobi_rotation(alpha, beta, gamma);
        rotate_cols(w, p, q, r);
        rotate_rows(w, p, q, r);
        rotate_cols(v, p, q, r);
        const double g = std::abs(gamma);
        w(p, q) = 0.0;
        w(q, p) = 0.0;
        w(p, p) = alpha - r.t * g;
        w(q, q) = beta + r.t * g;
      }
    }
    converged = off_diagonal_norm(w) <= target;
  }
  if (!converged) throw ConvergenceError("Jacobi eigensolver hit the sweep cap");

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return w(x, x).real() < w(y, y).real(); });
  EigDecomposition out;
  out.eigenvalues.resize(n);
  out.eigenvectors = ComplexMatrix(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    out.eigenvalues[k] = w(order[k], order[k]).real();
    out.eigenvectors.set_col(k, v.col(order[k]));
  }
  return out;
}

SvdResult svd(const ComplexMatrix& a) {
  if (a.rows() >= a.cols()) return one_sided_jacobi(a);
  SvdResult t = one_sided_jacobi(a.adjoint());
  return {std::move(t.v), std::move(t.s), std::move(t.u)};
}

ComplexMatrix psd_sqrt(const ComplexMatrix& a, double tol) {
  const EigDecomposition eig = hermitian_eig(a, tol);
  const double top = std::max(1.0, std::abs(eig.eigenvalues.back()));
  std::vector<double> roots(eig.eigenvalues.size());
  for (std::size_t i = 0; i < roots.size(); ++i) {
    const double lambda = eig.eigenvalues[i];
    if (lambda < -tol) throw NotPsdError("matrix has eigenvalue " + std::to_string(lambda) + " below -tol");
    // Jacobi leaves O(eps) noise on exact zeros; its square root would be
    // O(1e-8), so anything under the noise floor is treated as zero.
    roots[i] = lambda <= 1e-14 * top ? 0.0 : std::sqrt(lambda);
  }
  const ComplexMatrix& v = eig.eigenvectors;
  return v * ComplexMatrix::diagonal(roots) * v.adjoint();
}

}  // namespace qic
