#include "qic/state.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "qic/errors.hpp"

namespace qic {

DensityMatrix make_density(const ComplexMatrix& mat, double tol) {
  if (!mat.square()) throw SizeError("density matrix must be square");
  if (mat.hermiticity_defect() > tol * std::max(1.0, mat.frobenius_norm())) {
    throw HermiticityError("density matrix is not Hermitian");
  }
  ComplexMatrix h = mat.hermitian_part();
  const double tr = h.trace().real();
  if (std::abs(tr - 1.0) > tol) throw TraceError("density matrix trace is " + std::to_string(tr));
  const EigDecomposition eig = hermitian_eig(h, tol);
  if (eig.eigenvalues.front() < -tol) {
    throw NotPsdError("density matrix has eigenvalue " + std::to_string(eig.eigenvalues.front()));
  }
  return DensityMatrix(std::move(h));
}

DensityMatrix pure_density(std::span<const cplx> v, double tol) {
  if (std::abs(norm2(v) - 1.0) > tol) throw NormError("state vector is not normalized");
  return make_density(ComplexMatrix::outer(v, v), tol);
}

DensityMatrix mixture(std::span<const double> weights, std::span<const DensityMatrix> states, double tol) {
  if (weights.size() != states.size() || states.empty()) {
    throw SizeError("mixture needs one weight per state");
  }
  double total = 0.0;
  for (double w : weights) {
    if (!(w >= -tol)) throw DistributionError("mixture weight is negative");
    total += w;
  }
  if (std::abs(total - 1.0) > tol) throw DistributionError("mixture weights sum to " + std::to_string(total));
  ComplexMatrix acc(states[0].dim(), states[0].dim());
  for (std::size_t i = 0; i < states.size(); ++i) {
    if (states[i].dim() != acc.rows()) throw SizeError("mixture of states with different dimensions");
    acc += states[i].mat() * cplx(weights[i]);
  }
  return make_density(acc, tol);
}

DensityMatrix reduce(const DensityMatrix& rho, std::size_t dim_h, std::size_t dim_k, Keep keep) {
  return make_density(partial_trace(rho.mat(), dim_h, dim_k, keep));
}

BipartitePureState::BipartitePureState(std::size_t dim_h, std::size_t dim_k, std::vector<cplx> vec, double tol)
    : dim_h_(dim_h), dim_k_(dim_k), vec_(std::move(vec)) {
  if (dim_h == 0 || dim_k == 0 || vec_.size() != dim_h * dim_k) {
    throw SizeError("pure state length does not match dim_h * dim_k");
  }
  if (dim_h * dim_k > kMaxDim) throw SizeError("pure state dimension exceeds the cap");
  for (const auto& z : vec_) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) throw NonFiniteError("state entry is not finite");
  }
  const double n = norm2(vec_);
  if (std::abs(n - 1.0) > tol) throw NormError("pure state norm is " + std::to_string(n));
}

ComplexMatrix BipartitePureState::reshape() const { return ComplexMatrix(dim_h_, dim_k_, vec_); }

ComplexMatrix BipartitePureState::density() const { return ComplexMatrix::outer(vec_, vec_); }

DensityMatrix BipartitePureState::reduced(Keep keep) const {
  const ComplexMatrix a = reshape();
  // A A^dagger on H, A^T conj(A) on K.
  return make_density(keep == Keep::H ? a * a.adjoint() : a.transpose() * a.conj());
}

BipartitePureState from_reshape(const ComplexMatrix& a, double tol) {
  return BipartitePureState(a.rows(), a.cols(), std::vector<cplx>(a.entries().begin(), a.entries().end()), tol);
}

SchmidtDecomposition schmidt(const BipartitePureState& psi) {
  const SvdResult d = svd(psi.reshape());
  // A = U S V^dagger, so vec = sum_i s_i u_i (x) conj(v_i).
  return {d.s, d.u, d.v.conj()};
}

std::size_t numerical_rank(const DensityMatrix& rho, double tol) {
  const auto ev = hermitian_eig(rho.mat(), tol).eigenvalues;
  return static_cast<std::size_t>(std::count_if(ev.begin(), ev.end(), [&](double l) { return l > tol; }));
}

namespace {

// Rotates v so its first non-negligible component is real and positive, and
// returns that component.
double normalize_phase(std::vector<cplx>& v) {
  for (const auto& z : v) {
    if (std::abs(z) > 1e-12) {
      const cplx ph = std::conj(z) / std::abs(z);
      for (auto& w : v) w *= ph;
      return std::abs(z);
    }
  }
  return 0.0;
}

}  // namespace

BipartitePureState canonical_purification(const DensityMatrix& rho, std::size_t dim_k, double tol) {
  const std::size_t n = rho.dim();
  const EigDecomposition eig = hermitian_eig(rho.mat(), tol);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::vector<std::vector<cplx>> vecs(n);
  std::vector<double> key(n);
  for (std::size_t i = 0; i < n; ++i) {
    vecs[i] = eig.eigenvectors.col(i);
    key[i] = normalize_phase(vecs[i]);
  }
  std::reverse(order.begin(), order.end());  // descending eigenvalue
  // Secondary key within degenerate groups, for reproducibility.
  for (std::size_t start = 0; start < n;) {
    std::size_t end = start + 1;
    while (end < n && std::abs(eig.eigenvalues[order[end]] - eig.eigenvalues[order[start]]) <= tol) ++end;
    std::stable_sort(order.begin() + start, order.begin() + end,
                     [&](std::size_t a, std::size_t b) { return key[a] > key[b]; });
    start = end;
  }

  std::size_t rank = 0;
  for (double l : eig.eigenvalues) rank += l > tol ? 1 : 0;
  if (dim_k < rank) {
    throw RankError("purifying register of dimension " + std::to_string(dim_k) + " is smaller than rank " +
                    std::to_string(rank));
  }
  std::vector<cplx> out(n * dim_k);
  // Same noise floor as psd_sqrt: sqrt of a 1e-17 rounding residue would
  // put 3e-9 of amplitude on a direction that is not in the support.
  const double floor = 1e-14 * std::max(1.0, eig.eigenvalues.back());
  for (std::size_t k = 0; k < std::min(dim_k, n); ++k) {
    const double lambda = eig.eigenvalues[order[k]] <= floor ? 0.0 : eig.eigenvalues[order[k]];
    const double root = std::sqrt(lambda);
    for (std::size_t i = 0; i < n; ++i) out[i * dim_k + k] = root * vecs[order[k]][i];
  }
  const double len = norm2(out);
  for (auto& z : out) z /= len;
  return BipartitePureState(n, dim_k, std::move(out), std::max(tol, 1e-8));
}

double phase_distance(std::span<const cplx> u, std::span<const cplx> v) {
  if (u.size() != v.size()) throw SizeError("phase_distance: length mismatch");
  // Align v to u with the optimal phase, then measure directly; the closed
  // form sqrt(|u|^2 + |v|^2 - 2|<u|v>|) loses half the digits.
  const cplx ov = inner(v, u);
  const cplx ph = std::abs(ov) > 0.0 ? ov / std::abs(ov) : cplx(1.0);
  double s = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) s += std::norm(u[i] - ph * v[i]);
  return std::sqrt(s);
}

std::vector<cplx> random_vector(std::size_t dim, Rng& rng) {
  std::vector<cplx> v(dim);
  for (auto& z : v) z = rng.complex_gaussian();
  const double len = norm2(v);
  for (auto& z : v) z /= len;
  return v;
}

ComplexMatrix random_unitary(std::size_t dim, Rng& rng) {
  // Gram-Schmidt of a Ginibre matrix gives R with positive diagonal, which
  // makes Q Haar distributed.
  ComplexMatrix q(dim, dim);
  for (std::size_t c = 0; c < dim; ++c) {
    std::vector<cplx> v(dim);
    for (auto& z : v) z = rng.complex_gaussian();
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t k = 0; k < c; ++k) {
        const auto b = q.col(k);
        const cplx p = inner(b, v);
        for (std::size_t i = 0; i < dim; ++i) v[i] -= p * b[i];
      }
    }
    const double len = norm2(v);
    for (auto& z : v) z /= len;
    q.set_col(c, v);
  }
  return q;
}

ComplexMatrix random_unitary(std::size_t dim, std::uint64_t seed) {
  Rng rng(seed);
  return random_unitary(dim, rng);
}

DensityMatrix random_density(std::size_t dim, std::size_t rank, Rng& rng) {
  if (rank < 1 || rank > dim) throw RangeError("random_density needs 1 <= rank <= dim");
  ComplexMatrix g(dim, rank);
  for (auto& z : g.entries()) z = rng.complex_gaussian();
  ComplexMatrix rho = g * g.adjoint();
  rho *= 1.0 / rho.trace().real();
  return make_density(rho.hermitian_part());
}

DensityMatrix random_density(std::size_t dim, std::size_t rank, std::uint64_t seed) {
  Rng rng(seed);
  return random_density(dim, rank, rng);
}

BipartitePureState random_pure(std::size_t dim_h, std::size_t dim_k, std::uint64_t seed) {
  Rng rng(seed);
  return BipartitePureState(dim_h, dim_k, random_vector(dim_h * dim_k, rng));
}

nlohmann::json to_json(const BipartitePureState& s) {
  return {{"dim_h", s.dim_h()}, {"dim_k", s.dim_k()}, {"vec", vector_to_json(s.vec())}};
}

BipartitePureState pure_state_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("dim_h") || !j.contains("dim_k") || !j.contains("vec")) {
    throw FormatError("pure state JSON needs dim_h, dim_k and vec");
  }
  return BipartitePureState(j.at("dim_h").get<std::size_t>(), j.at("dim_k").get<std::size_t>(),
                            vector_from_json(j.at("vec")));
}

DensityMatrix density_from_json(const nlohmann::json& j, double tol) { return make_density(matrix_from_json(j), tol); }

}  // namespace qic
