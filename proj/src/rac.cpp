#include "qic/rac.hpp"

#include <cmath>
#include <numbers>

#include "qic/encoding.hpp"
#include "qic/entropy.hpp"
#include "qic/errors.hpp"
#include "qic/protocol_json.hpp"
#include "qic/sk_problem.hpp"

namespace qic {

ComplexMatrix bloch_unitary(const Bloch& r) {
  const double len = std::sqrt(r[0] * r[0] + r[1] * r[1] + r[2] * r[2]);
  if (len < 1e-15) return ComplexMatrix::identity(2);
  const double theta = std::acos(std::clamp(r[2] / len, -1.0, 1.0));
  const double phi = std::atan2(r[1], r[0]);
  const double c = std::cos(theta / 2), s = std::sin(theta / 2);
  return {2, 2, {c, -std::polar(s, -phi), std::polar(s, phi), c}};
}

Bloch rac_encoding_direction(const std::vector<Bloch>& dirs, std::uint64_t x) {
  const std::size_t n = dirs.size();
  Bloch v{0, 0, 0};
  for (std::size_t i = 0; i < n; ++i) {
    const double sign = ((x >> (n - 1 - i)) & 1) ? -1.0 : 1.0;
    for (int a = 0; a < 3; ++a) v[a] += sign * dirs[i][a];
  }
  return v;
}

double rac_success(const std::vector<Bloch>& dirs) {
  const std::size_t n = dirs.size();
  if (n == 0 || n > 16) throw RangeError("random access code needs 1..16 bits");
  double total = 0.0;
  for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x) {
    const Bloch v = rac_encoding_direction(dirs, x);
    total += std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
  }
  return 0.5 + total / (2.0 * static_cast<double>(n) * static_cast<double>(std::uint64_t{1} << n));
}

namespace {

std::vector<Bloch> directions_from(std::size_t n, const std::vector<double>& p) {
  std::vector<Bloch> d{{0, 0, 1}};
  if (n >= 2) d.push_back({std::sin(p[0]), 0.0, std::cos(p[0])});
  for (std::size_t i = 2; i < n; ++i) {
    const double th = p[1 + 2 * (i - 2)], ph = p[2 + 2 * (i - 2)];
    d.push_back({std::sin(th) * std::cos(ph), std::sin(th) * std::sin(ph), std::cos(th)});
  }
  return d;
}

}  // namespace

RacCode optimize_rac(std::size_t n, std::size_t grid) {
  if (n == 0 || n > 8) throw RangeError("optimize_rac supports 1..8 bits");
  const std::size_t dims = n >= 2 ? 2 * n - 3 : 0;
  std::vector<double> best(dims, 0.0);
  double best_val = rac_success(directions_from(n, best));
  if (dims > 0) {
    // Keep the grid below ~2e5 points whatever the dimension.
    std::size_t g = std::max<std::size_t>(grid, 2);
    while (g > 2 && std::pow(static_cast<double>(g), static_cast<double>(dims)) > 2e5) --g;
    std::vector<std::size_t> idx(dims, 0);
    std::vector<double> p(dims);
    for (;;) {
      for (std::size_t d = 0; d < dims; ++d) {
        // Polar angles cover [0, pi], azimuths [0, 2 pi).
        const bool polar = d == 0 || (d % 2 == 1);
        p[d] = polar ? std::numbers::pi * (static_cast<double>(idx[d]) + 0.5) / static_cast<double>(g)
                     : 2 * std::numbers::pi * static_cast<double>(idx[d]) / static_cast<double>(g);
      }
      const double v = rac_success(directions_from(n, p));
      if (v > best_val) {
        best_val = v;
        best = p;
      }
      std::size_t d = 0;
      while (d < dims && ++idx[d] == g) idx[d++] = 0;
      if (d == dims) break;
    }
    double step = std::numbers::pi / static_cast<double>(g);
    while (step > 1e-10) {
      bool improved = false;
      for (std::size_t d = 0; d < dims; ++d) {
        for (double sgn : {1.0, -1.0}) {
          auto q = best;
          q[d] += sgn * step;
          const double v = rac_success(directions_from(n, q));
          if (v > best_val + 1e-15) {
            best_val = v;
            best = q;
            improved = true;
          }
        }
      }
      if (!improved) step /= 2;
    }
  }
  return {n, directions_from(n, best), best_val};
}

namespace {

ProtocolSpec index_layout(std::size_t n, std::size_t m) {
  if (n < 2) throw RangeError("index-function protocols need n >= 2");
  ProtocolSpec spec;
  spec.registers = {{"x", n, Role::AliceInput, Player::Alice, true},
                    {"i", ceil_log2(n), Role::BobInput, Player::Bob, true},
                    {"q", m, Role::Message, Player::Alice, false},
                    {"out", 1, Role::BobWork, Player::Bob, false}};
  spec.decider = Player::Bob;
  spec.output = "out";
  return spec;
}

std::vector<std::string> concat(std::vector<std::string> a, const std::vector<std::string>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

}  // namespace

ProtocolSpec rac_protocol(const RacCode& code) {
  const std::size_t n = code.n;
  ProtocolSpec spec = index_layout(n, 1);
  std::vector<ComplexMatrix> enc;
  for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x)
    enc.push_back(bloch_unitary(rac_encoding_direction(code.directions, x)));
  const auto xq = register_qubits(spec, "x");
  spec.moves.push_back({Player::Alice, controlled(n, enc), concat(xq, {"q"}), {"q"}, "encode"});
  std::vector<ComplexMatrix> dec;
  for (std::size_t i = 0; i < n; ++i)
    dec.push_back(named_gate("CNOT") * tensor(bloch_unitary(code.directions[i]).adjoint(), ComplexMatrix::identity(2)));
  spec.moves.push_back(
      {Player::Bob, controlled(ceil_log2(n), dec), concat(register_qubits(spec, "i"), {"q", "out"}), {}, "decode"});
  return spec;
}

ProtocolSpec classical_copy_protocol(std::size_t n) {
  if (n + 1 > 8) throw RangeError("copy protocol needs n <= 7");
  ProtocolSpec spec = index_layout(n, n);
  const auto xq = register_qubits(spec, "x");
  const auto qq = register_qubits(spec, "q");
  for (std::size_t t = 0; t < n; ++t) {
    spec.moves.push_back({Player::Alice, named_gate("CNOT"), {xq[t], qq[t]}, t + 1 == n ? qq : std::vector<std::string>{}, "copy"});
  }
  // Bob: out ^= q_i, as a permutation of (q, out) for each index value.
  const std::size_t d = std::size_t{1} << (n + 1);
  std::vector<ComplexMatrix> dec;
  for (std::size_t i = 0; i < n; ++i) {
    ComplexMatrix p(d, d);
    for (std::size_t c = 0; c < d; ++c) {
      const std::size_t bit = (c >> (n - i)) & 1;  // q_i sits above the out bit
      p(c ^ bit, c) = 1.0;
    }
    dec.push_back(p);
  }
  spec.moves.push_back(
      {Player::Bob, controlled(ceil_log2(n), dec), concat(concat(register_qubits(spec, "i"), qq), {"out"}), {}, "decode"});
  return spec;
}

RacCheck rac_lower_bound_check(const ProtocolSpec& protocol, std::size_t n, double tol) {
  validate(protocol, tol);
  if (message_count(protocol) != 1) throw ProtocolError("expected exactly one message");
  const Move& msg = protocol.moves[first_send_move(protocol)];
  if (msg.player != Player::Alice) throw ProtocolError("the message must go from Alice to Bob");
  const Register& x = find_register(protocol, "x");
  const Register& i = find_register(protocol, "i");
  if (x.role != Role::AliceInput || x.qubits != n) throw ProtocolError("x must be Alice's n-bit input");
  if (i.role != Role::BobInput) throw ProtocolError("i must be Bob's input");
  if (n > kMaxEncodingBits) throw RangeError("n exceeds the encoding cap");

  RacCheck out;
  out.m = msg.send.size();
  out.eps = run_protocol(protocol, s1_distribution(n), {0, 0, tol}).error_avg;
  out.lhs = (1.0 - binary_entropy(out.eps)) * static_cast<double>(n);
  std::vector<DensityMatrix> states;
  for (std::uint64_t v = 0; v < (std::uint64_t{1} << n); ++v) {
    InputCase c;
    c.amplitudes["x"] = basis_amplitudes(n, v);
    states.push_back(first_message_density(protocol, c, tol));
  }
  const CQEnsemble e = CQEnsemble::uniform(static_cast<unsigned>(n), std::move(states));
  out.info = holevo_information(e);
  const InfoDecomposition d = info_decomposition_check(e);
  out.decomposition_lhs = d.lhs;
  out.decomposition_rhs = d.rhs;
  return out;
}

}  // namespace qic
