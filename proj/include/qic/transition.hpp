#pragma once

#include <cstdint>

#include <json.hpp>

#include "qic/state.hpp"

namespace qic {

struct TransitionResult {
  ComplexMatrix unitary_k;
  double achieved_overlap_sq;  // |<phi1|(I (x) U)|phi2>|^2
  double pure_distance;        // 2 sqrt(1 - overlap^2)
  double bound;                // 2 ||rho1 - rho2||_t^{1/2}
};

// (I (x) u) phi
std::vector<cplx> apply_k(const BipartitePureState& phi, const ComplexMatrix& u);

// K-side unitary maximizing the overlap with phi1, from the SVD of
// A1^dagger A2. The overlap comes out real and non-negative.
TransitionResult uhlmann_align(const BipartitePureState& phi1, const BipartitePureState& phi2,
                               double tol = kDefaultTol.validation);

// For purifications of the same H-side state: (I (x) U) phi2 = phi1 up to
// a global phase (with the phase convention above, the phase is 1). Throws
// PreconditionError when the reduced matrices differ by more than tol in
// trace distance.
ComplexMatrix exact_local_transition(const BipartitePureState& phi1, const BipartitePureState& phi2,
                                     double tol = kDefaultTol.validation);

struct TransitionReport {
  std::size_t trials = 0;
  double min_slack = 0.0;  // min of bound - pure_distance
  std::size_t violations = 0;
  std::uint64_t worst_instance_seed = 0;
  // 1 - F <= ||rho1 - rho2||_t along the way.
  double chain_min_slack = 0.0;
  std::size_t chain_violations = 0;
};

// Random density pairs on dim_h, purified into dim_k, aligned and checked.
TransitionReport verify_transition_bound(std::size_t trials, std::size_t dim_h, std::size_t dim_k,
                                         std::uint64_t seed, double tol = kDefaultTol.certification);

nlohmann::json to_json(const TransitionReport& r);

}  // namespace qic
