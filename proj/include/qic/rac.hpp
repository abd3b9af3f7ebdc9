#pragma once

#include <array>
#include <vector>

#include "qic/protocol.hpp"

namespace qic {

using Bloch = std::array<double, 3>;

// Qubit unitary whose first column has Bloch vector r (r need not be unit;
// its direction is used, and the zero vector maps to +z).
ComplexMatrix bloch_unitary(const Bloch& r);

// Average success of an n -> 1 random access code that decodes bit i by
// measuring along dirs[i] and encodes x optimally, i.e. along
// sum_i (-1)^{x_i} dirs[i].
double rac_success(const std::vector<Bloch>& dirs);
Bloch rac_encoding_direction(const std::vector<Bloch>& dirs, std::uint64_t x);

struct RacCode {
  std::size_t n = 0;
  std::vector<Bloch> directions;
  double success = 0.0;
};

// Grid search plus pattern refinement over measurement directions. The first
// direction is fixed to +z and the second to the xz half-plane.
RacCode optimize_rac(std::size_t n, std::size_t grid = 24);

// One-message index-function protocols. Registers: x (Alice's n-bit
// input), i (Bob's index), q (the message), out (Bob's answer qubit).
ProtocolSpec rac_protocol(const RacCode& code);
ProtocolSpec classical_copy_protocol(std::size_t n);

struct RacCheck {
  double eps = 0.0;
  double lhs = 0.0;     // (1 - H(eps)) n
  std::size_t m = 0;
  double info = 0.0;    // I(Q:X)
  double decomposition_lhs = 0.0;
  double decomposition_rhs = 0.0;
};

// Throws ProtocolError unless the protocol sends exactly one message, from
// Alice to Bob, with x and i registers of the index-function layout.
RacCheck rac_lower_bound_check(const ProtocolSpec& protocol, std::size_t n, double tol = kDefaultTol.validation);

}  // namespace qic
