#pragma once

#include <cstdint>
#include <vector>

#include "qic/protocol.hpp"

namespace qic {

std::size_t ceil_log2(std::size_t n);

// S_1(x, i) = x_i with x an n-bit string, x_1 most significant.
int s1_value(std::uint64_t x, std::size_t n, std::size_t i);

// k = 1: x[0] is the n-bit string and a the index.
// k = 2: x[i] are n strings of `inner` bits, a in [n] held by Alice, y[i] in [inner].
struct SkInstance {
  int k = 1;
  std::size_t n = 0;
  std::size_t inner = 0;
  std::vector<std::uint64_t> x;
  std::size_t a = 0;
  std::vector<std::uint64_t> y;
};

int sk_value(const SkInstance& s);

// Uniform x in {0,1}^n and i in [n], both classical.
InputDistribution s1_distribution(std::size_t n);

// Bob sends i, Alice answers with x_i.
ProtocolSpec index_trivial_protocol(std::size_t n);

// Register names of the k = 2 layout.
struct SkShape {
  std::size_t n = 2;
  std::size_t inner = 2;
  std::string x(std::size_t i) const { return "x" + std::to_string(i); }
  std::string y(std::size_t i) const { return "y" + std::to_string(i); }
  std::size_t y_qubits() const { return ceil_log2(inner); }
  std::size_t a_qubits() const { return ceil_log2(n); }
};

enum class YMode { Superposed, Classical };

// U_{a=j}: x uniform, a = j, y_j uniform and classical; the other y_i are in
// uniform superposition (Superposed) or enumerated as random values.
InputDistribution build_sk_distribution(int k, const SkShape& shape, std::size_t j, YMode mode = YMode::Superposed);

// Uniform a and classical uniform y; slices are the values of a.
InputDistribution sk_uniform_distribution(const SkShape& shape);

enum class ToyKind { Independent, CopyY0, Rac, RandomWork };
const char* to_string(ToyKind t);

// k = 2 protocols started by Bob, the wrong player: Bob sends one qubit m
// computed from his y's, Alice rotates m by W_a, reads it as a guess for
// y_a and returns (x_a)_guess in ans. Needs inner = 2.
ProtocolSpec toy_k2_protocol(ToyKind kind, const SkShape& shape, std::uint64_t seed = 0);

}  // namespace qic
