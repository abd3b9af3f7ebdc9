#include "qic/sk_problem.hpp"

#include "qic/errors.hpp"
#include "qic/protocol_json.hpp"
#include "qic/rac.hpp"

namespace qic {

std::size_t ceil_log2(std::size_t n) {
  std::size_t q = 0;
  while ((std::size_t{1} << q) < n) ++q;
  return q;
}

int s1_value(std::uint64_t x, std::size_t n, std::size_t i) {
  if (i >= n) throw RangeError("index out of range");
  return static_cast<int>((x >> (n - 1 - i)) & 1);
}

int sk_value(const SkInstance& s) {
  if (s.k == 1) {
    if (s.x.size() != 1) throw SizeError("S_1 takes one string");
    return s1_value(s.x[0], s.n, s.a);
  }
  if (s.k == 2) {
    if (s.x.size() != s.n || s.y.size() != s.n || s.a >= s.n) throw SizeError("S_2 instance has the wrong shape");
    return s1_value(s.x[s.a], s.inner, static_cast<std::size_t>(s.y[s.a]));
  }
  throw RangeError("only k = 1 and k = 2 are supported");
}

InputDistribution s1_distribution(std::size_t n) {
  if (n < 2 || n > 12) throw SizeError("index function needs 2 <= n <= 12");
  InputDistribution out;
  const double w = 1.0 / static_cast<double>(n << n);
  for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x) {
    for (std::size_t i = 0; i < n; ++i) {
      InputCase c;
      c.weight = w;
      c.target = s1_value(x, n, i);
      c.slice = static_cast<int>(i);
      c.amplitudes["x"] = basis_amplitudes(n, x);
      c.amplitudes["i"] = basis_amplitudes(ceil_log2(n), i);
      out.push_back(std::move(c));
    }
  }
  return out;
}

namespace {

// |c, o> -> |c, o ^ f(c)> on (c, out).
ComplexMatrix xor_into_last(std::size_t c_qubits, const std::vector<int>& f) {
  const std::size_t d = std::size_t{2} << c_qubits;
  ComplexMatrix p(d, d);
  for (std::size_t v = 0; v < d; ++v) {
    const std::size_t c = v >> 1;
    const int bit = c < f.size() ? f[c] : 0;
    p(v ^ static_cast<std::size_t>(bit), v) = 1.0;
  }
  return p;
}

// |c> -> |c ^ v> on q qubits.
ComplexMatrix xor_pattern(std::size_t q, std::size_t v) {
  const std::size_t d = std::size_t{1} << q;
  ComplexMatrix p(d, d);
  for (std::size_t c = 0; c < d; ++c) p(c ^ v, c) = 1.0;
  return p;
}

std::vector<std::string> concat(std::vector<std::string> a, const std::vector<std::string>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

}  // namespace

ProtocolSpec index_trivial_protocol(std::size_t n) {
  const std::size_t li = ceil_log2(n);
  if (n < 2 || n + li + 1 > 8) throw RangeError("trivial index protocol needs 2 <= n <= 4");
  ProtocolSpec spec;
  spec.registers = {{"x", n, Role::AliceInput, Player::Alice, true},
                    {"i", li, Role::BobInput, Player::Bob, true},
                    {"c", li, Role::Message, Player::Bob, false},
                    {"ans", 1, Role::Message, Player::Alice, false}};
  std::vector<ComplexMatrix> copy;
  for (std::size_t v = 0; v < n; ++v) copy.push_back(xor_pattern(li, v));
  const auto cq = register_qubits(spec, "c");
  spec.moves.push_back({Player::Bob, controlled(li, copy), concat(register_qubits(spec, "i"), cq), cq, "send index"});
  std::vector<ComplexMatrix> answer;
  for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x) {
    std::vector<int> f;
    for (std::size_t i = 0; i < n; ++i) f.push_back(s1_value(x, n, i));
    answer.push_back(xor_into_last(li, f));
  }
  spec.moves.push_back(
      {Player::Alice, controlled(n, answer), concat(concat(register_qubits(spec, "x"), cq), {"ans"}), {"ans"}, "answer"});
  spec.decider = Player::Bob;
  spec.output = "ans";
  return spec;
}

namespace {

void check_shape(const SkShape& s) {
  if (s.n < 2 || s.inner < 2) throw SizeError("S_2 needs n >= 2 and inner >= 2");
  if (s.n * s.inner > 12) throw SizeError("S_2 instance too large to enumerate");
}

void add_x_and_a(InputCase& c, const SkShape& s, std::uint64_t xs, std::size_t a) {
  for (std::size_t i = 0; i < s.n; ++i) {
    const std::uint64_t xi = (xs >> (s.inner * (s.n - 1 - i))) & ((std::uint64_t{1} << s.inner) - 1);
    c.amplitudes[s.x(i)] = basis_amplitudes(s.inner, xi);
  }
  c.amplitudes["a"] = basis_amplitudes(s.a_qubits(), a);
}

std::uint64_t x_part(const SkShape& s, std::uint64_t xs, std::size_t i) {
  return (xs >> (s.inner * (s.n - 1 - i))) & ((std::uint64_t{1} << s.inner) - 1);
}

std::size_t ipow(std::size_t b, std::size_t e) {
  std::size_t r = 1;
  while (e--) r *= b;
  return r;
}

}  // namespace

InputDistribution build_sk_distribution(int k, const SkShape& shape, std::size_t j, YMode mode) {
  if (k != 2) throw RangeError("only k = 2 is supported");
  check_shape(shape);
  if (j >= shape.n) throw RangeError("pointer out of range");
  const std::uint64_t xcount = std::uint64_t{1} << (shape.n * shape.inner);
  const std::size_t others = mode == YMode::Classical ? ipow(shape.inner, shape.n - 1) : 1;
  const double w = 1.0 / (static_cast<double>(xcount) * static_cast<double>(shape.inner * others));
  InputDistribution out;
  for (std::uint64_t xs = 0; xs < xcount; ++xs) {
    for (std::size_t z = 0; z < shape.inner; ++z) {
      for (std::size_t o = 0; o < others; ++o) {
        InputCase c;
        c.weight = w;
        c.slice = static_cast<int>(j);
        c.target = s1_value(x_part(shape, xs, j), shape.inner, z);
        add_x_and_a(c, shape, xs, j);
        std::size_t rest = o;
        for (std::size_t i = 0; i < shape.n; ++i) {
          if (i == j) {
            c.amplitudes[shape.y(i)] = basis_amplitudes(shape.y_qubits(), z);
          } else if (mode == YMode::Superposed) {
            c.amplitudes[shape.y(i)] = uniform_amplitudes(shape.y_qubits(), shape.inner);
          } else {
            c.amplitudes[shape.y(i)] = basis_amplitudes(shape.y_qubits(), rest % shape.inner);
            rest /= shape.inner;
          }
        }
        out.push_back(std::move(c));
      }
    }
  }
  return out;
}

InputDistribution sk_uniform_distribution(const SkShape& shape) {
  check_shape(shape);
  const std::uint64_t xcount = std::uint64_t{1} << (shape.n * shape.inner);
  const std::size_t ycount = ipow(shape.inner, shape.n);
  const double w = 1.0 / (static_cast<double>(xcount) * static_cast<double>(shape.n * ycount));
  InputDistribution out;
  for (std::size_t a = 0; a < shape.n; ++a) {
    for (std::uint64_t xs = 0; xs < xcount; ++xs) {
      for (std::size_t ys = 0; ys < ycount; ++ys) {
        InputCase c;
        c.weight = w;
        c.slice = static_cast<int>(a);
        add_x_and_a(c, shape, xs, a);
        std::size_t rest = ys;
        std::size_t ya = 0;
        for (std::size_t i = 0; i < shape.n; ++i) {
          const std::size_t v = rest % shape.inner;
          rest /= shape.inner;
          if (i == a) ya = v;
          c.amplitudes[shape.y(i)] = basis_amplitudes(shape.y_qubits(), v);
        }
        c.target = s1_value(x_part(shape, xs, a), shape.inner, ya);
        out.push_back(std::move(c));
      }
    }
  }
  return out;
}

const char* to_string(ToyKind t) {
  switch (t) {
    case ToyKind::Independent: return "independent";
    case ToyKind::CopyY0: return "copy_y0";
    case ToyKind::Rac: return "rac";
    case ToyKind::RandomWork: return "random_work";
  }
  return "?";
}

ProtocolSpec toy_k2_protocol(ToyKind kind, const SkShape& shape, std::uint64_t seed) {
  check_shape(shape);
  if (shape.inner != 2) throw RangeError("toy protocols read one bit of y, so inner must be 2");
  const std::size_t n = shape.n;
  const std::size_t aq = shape.a_qubits();
  const bool work = kind == ToyKind::RandomWork;
  ProtocolSpec spec;
  for (std::size_t i = 0; i < n; ++i) spec.registers.push_back({shape.x(i), shape.inner, Role::AliceInput, Player::Alice, true});
  spec.registers.push_back({"a", aq, Role::AliceInput, Player::Alice, true});
  for (std::size_t i = 0; i < n; ++i) spec.registers.push_back({shape.y(i), 1, Role::BobInput, Player::Bob, false});
  spec.registers.push_back({"m", 1, Role::Message, Player::Bob, false});
  spec.registers.push_back({"ans", 1, Role::Message, Player::Alice, false});
  if (work) spec.registers.push_back({"w", 1, Role::BobWork, Player::Bob, false});

  Rng rng(seed);
  std::vector<Bloch> dirs;
  if (kind == ToyKind::Rac) dirs = optimize_rac(n, 12).directions;

  std::vector<ComplexMatrix> v_blocks;
  for (std::uint64_t y = 0; y < (std::uint64_t{1} << n); ++y) {
    switch (kind) {
      case ToyKind::Independent: v_blocks.push_back(named_gate("H")); break;
      case ToyKind::CopyY0: v_blocks.push_back(named_gate(((y >> (n - 1)) & 1) ? "X" : "I")); break;
      case ToyKind::Rac: v_blocks.push_back(bloch_unitary(rac_encoding_direction(dirs, y))); break;
      case ToyKind::RandomWork: v_blocks.push_back(random_unitary(4, rng)); break;
    }
  }
  std::vector<std::string> bob_targets;
  for (std::size_t i = 0; i < n; ++i) bob_targets.push_back(shape.y(i));
  bob_targets.push_back("m");
  if (work) bob_targets.push_back("w");
  spec.moves.push_back({Player::Bob, controlled(n, v_blocks), bob_targets, {"m"}, "first message"});

  std::vector<ComplexMatrix> w;
  for (std::size_t a = 0; a < n; ++a) {
    if (kind == ToyKind::Rac) {
      w.push_back(bloch_unitary(dirs[a]).adjoint());
    } else if (kind == ToyKind::RandomWork) {
      w.push_back(random_unitary(2, rng));
    } else {
      w.push_back(ComplexMatrix::identity(2));
    }
  }
  std::vector<ComplexMatrix> blocks;
  const std::uint64_t xcount = std::uint64_t{1} << (n * shape.inner);
  for (std::uint64_t xs = 0; xs < xcount; ++xs) {
    for (std::size_t a = 0; a < (std::size_t{1} << aq); ++a) {
      if (a >= n) {
        blocks.push_back(ComplexMatrix::identity(4));
        continue;
      }
      const std::uint64_t xa = x_part(shape, xs, a);
      const std::vector<int> f{s1_value(xa, shape.inner, 0), s1_value(xa, shape.inner, 1)};
      blocks.push_back(xor_into_last(1, f) * tensor(w[a], ComplexMatrix::identity(2)));
    }
  }
  std::vector<std::string> alice_targets;
  for (std::size_t i = 0; i < n; ++i) {
    const auto q = register_qubits(spec, shape.x(i));
    alice_targets.insert(alice_targets.end(), q.begin(), q.end());
  }
  const auto aq_labels = register_qubits(spec, "a");
  alice_targets.insert(alice_targets.end(), aq_labels.begin(), aq_labels.end());
  alice_targets.push_back("m");
  alice_targets.push_back("ans");
  if (alice_targets.size() > 8) throw SizeError("toy protocol needs more than 8 qubits in one move");
  spec.moves.push_back(
      {Player::Alice, controlled(n * shape.inner + aq, blocks), alice_targets, {"ans"}, "answer"});
  spec.decider = Player::Bob;
  spec.output = "ans";
  return spec;
}

}  // namespace qic
