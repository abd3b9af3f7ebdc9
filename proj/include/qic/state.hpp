#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "qic/matrix.hpp"
#include "qic/rng.hpp"

namespace qic {

// Hermitian, PSD, unit-trace matrix. Only make_density and the functions in
// this header construct one, so holding a DensityMatrix means it validated.
class DensityMatrix {
 public:
  std::size_t dim() const { return mat_.rows(); }
  const ComplexMatrix& mat() const { return mat_; }

 private:
  explicit DensityMatrix(ComplexMatrix m) : mat_(std::move(m)) {}
  ComplexMatrix mat_;
  friend DensityMatrix make_density(const ComplexMatrix&, double);
};

// Throws HermiticityError, TraceError or NotPsdError. The stored matrix is
// the Hermitian part of the input.
DensityMatrix make_density(const ComplexMatrix& mat, double tol = kDefaultTol.validation);

// |v><v| for a unit vector.
DensityMatrix pure_density(std::span<const cplx> v, double tol = kDefaultTol.validation);

// Sum of w_i rho_i. Negative weights or a sum away from 1 throw
// DistributionError; dimension mismatch throws SizeError.
DensityMatrix mixture(std::span<const double> weights, std::span<const DensityMatrix> states,
                      double tol = kDefaultTol.validation);

DensityMatrix reduce(const DensityMatrix& rho, std::size_t dim_h, std::size_t dim_k, Keep keep);

// Unit vector over H (x) K, index i * dim_k + k.
class BipartitePureState {
 public:
  // Throws NormError when | ||vec|| - 1 | > tol, SizeError on a length mismatch.
  BipartitePureState(std::size_t dim_h, std::size_t dim_k, std::vector<cplx> vec,
                     double tol = kDefaultTol.validation);

  std::size_t dim_h() const { return dim_h_; }
  std::size_t dim_k() const { return dim_k_; }
  const std::vector<cplx>& vec() const { return vec_; }

  // dim_h x dim_k matrix A with A(i, k) = vec[i * dim_k + k]; rho_H = A A^dagger.
  ComplexMatrix reshape() const;
  ComplexMatrix density() const;
  DensityMatrix reduced(Keep keep) const;

 private:
  std::size_t dim_h_;
  std::size_t dim_k_;
  std::vector<cplx> vec_;
};

BipartitePureState from_reshape(const ComplexMatrix& a, double tol = kDefaultTol.validation);

struct SchmidtDecomposition {
  std::vector<double> coeffs;  // descending
  ComplexMatrix left_basis;    // dim_h x r
  ComplexMatrix right_basis;   // dim_k x r
};

// r = min(dim_h, dim_k); vec = sum_i coeffs_i left_i (x) right_i.
SchmidtDecomposition schmidt(const BipartitePureState& psi);

// sum_i sqrt(lambda_i) |e_i>|i> with eigenvalues in descending order. Throws
// RankError when more than dim_k eigenvalues exceed tol. Eigenvalues below
// tol that do not fit are dropped and the vector renormalized.
BipartitePureState canonical_purification(const DensityMatrix& rho, std::size_t dim_k,
                                          double tol = kDefaultTol.validation);

// Number of eigenvalues above tol.
std::size_t numerical_rank(const DensityMatrix& rho, double tol = kDefaultTol.validation);

// min over theta of || u - e^{i theta} v ||.
double phase_distance(std::span<const cplx> u, std::span<const cplx> v);

std::vector<cplx> random_vector(std::size_t dim, Rng& rng);  // unit norm
ComplexMatrix random_unitary(std::size_t dim, std::uint64_t seed);
ComplexMatrix random_unitary(std::size_t dim, Rng& rng);
DensityMatrix random_density(std::size_t dim, std::size_t rank, std::uint64_t seed);
DensityMatrix random_density(std::size_t dim, std::size_t rank, Rng& rng);
BipartitePureState random_pure(std::size_t dim_h, std::size_t dim_k, std::uint64_t seed);

// {"dim_h": n, "dim_k": m, "vec": [[re, im], ...]}
nlohmann::json to_json(const BipartitePureState& s);
BipartitePureState pure_state_from_json(const nlohmann::json& j);
DensityMatrix density_from_json(const nlohmann::json& j, double tol = kDefaultTol.validation);

}  // namespace qic
