#include "qic/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "qic/errors.hpp"
#include "qic/rng.hpp"

namespace qic {

const char* to_string(Player p) { return p == Player::Alice ? "alice" : "bob"; }

const char* to_string(Role r) {
  switch (r) {
    case Role::AliceInput: return "alice_input";
    case Role::BobInput: return "bob_input";
    case Role::AliceWork: return "alice_work";
    case Role::BobWork: return "bob_work";
    case Role::Message: return "message";
  }
  return "?";
}

bool is_input(Role r) { return r == Role::AliceInput || r == Role::BobInput; }

std::vector<std::string> qubit_labels(const Register& r) {
  if (r.qubits == 1) return {r.name};
  std::vector<std::string> out;
  for (std::size_t i = 0; i < r.qubits; ++i) out.push_back(r.name + "." + std::to_string(i));
  return out;
}

const Register& find_register(const ProtocolSpec& spec, const std::string& name) {
  for (const auto& r : spec.registers)
    if (r.name == name) return r;
  throw ProtocolError("no register named " + name);
}

std::vector<std::string> register_qubits(const ProtocolSpec& spec, const std::string& name) {
  return qubit_labels(find_register(spec, name));
}

namespace {

struct QubitInfo {
  const Register* reg;
  Player owner;
};

std::map<std::string, QubitInfo> qubit_table(const ProtocolSpec& spec) {
  std::map<std::string, QubitInfo> table;
  std::set<std::string> names;
  for (const auto& r : spec.registers) {
    if (!names.insert(r.name).second) throw ProtocolError("duplicate register " + r.name);
    if (r.qubits == 0) throw ProtocolError("register " + r.name + " has no qubits");
    if (r.classical && !is_input(r.role)) throw ProtocolError("only input registers can be classical: " + r.name);
    if (is_input(r.role) && r.owner != (r.role == Role::AliceInput ? Player::Alice : Player::Bob)) {
      throw ProtocolError("input register " + r.name + " starts with the wrong player");
    }
    for (const auto& l : qubit_labels(r)) {
      if (!table.emplace(l, QubitInfo{&r, r.owner}).second) throw ProtocolError("duplicate qubit label " + l);
    }
  }
  return table;
}

}  // namespace

void validate(const ProtocolSpec& spec, double tol) {
  auto table = qubit_table(spec);
  for (std::size_t m = 0; m < spec.moves.size(); ++m) {
    const Move& mv = spec.moves[m];
    const std::string where = "move " + std::to_string(m) + ": ";
    std::set<std::string> seen;
    std::size_t input_mask = 0;
    const std::size_t k = mv.targets.size();
    for (std::size_t t = 0; t < k; ++t) {
      const auto it = table.find(mv.targets[t]);
      if (it == table.end()) throw ProtocolError(where + "unknown qubit " + mv.targets[t]);
      if (!seen.insert(mv.targets[t]).second) throw ProtocolError(where + "qubit listed twice " + mv.targets[t]);
      if (it->second.owner != mv.player) {
        throw ProtocolError(where + to_string(mv.player) + " does not own " + mv.targets[t]);
      }
      if (is_input(it->second.reg->role)) input_mask |= std::size_t{1} << (k - 1 - t);
    }
    if (k > 8) throw ProtocolError(where + "more than 8 target qubits");
    const std::size_t dim = std::size_t{1} << k;
    if (!mv.unitary.square() || mv.unitary.rows() != dim) throw ProtocolError(where + "unitary size does not match targets");
    if (unitarity_defect(mv.unitary) > tol * std::sqrt(static_cast<double>(dim))) {
      throw ProtocolError(where + "matrix is not unitary");
    }
    if (input_mask != 0) {
      for (std::size_t r = 0; r < dim; ++r)
        for (std::size_t c = 0; c < dim; ++c)
          if (((r ^ c) & input_mask) && std::abs(mv.unitary(r, c)) > tol) {
            throw ModelViolation(where + "unitary changes an input register");
          }
    }
    std::set<std::string> sent;
    for (const auto& l : mv.send) {
      const auto it = table.find(l);
      if (it == table.end()) throw ProtocolError(where + "unknown qubit " + l);
      if (!sent.insert(l).second) throw ProtocolError(where + "qubit sent twice " + l);
      if (it->second.owner != mv.player) throw ProtocolError(where + to_string(mv.player) + " cannot send " + l);
      if (it->second.reg->classical) throw ProtocolError(where + "classical input qubit cannot be sent: " + l);
      it->second.owner = other(mv.player);
    }
  }
  const auto it = table.find(spec.output);
  if (it == table.end()) throw ProtocolError("unknown output qubit " + spec.output);
  if (it->second.reg->classical) throw ProtocolError("output qubit is a classical input");
  if (it->second.owner != spec.decider) throw ProtocolError("deciding player does not hold the output qubit");
}

std::size_t message_count(const ProtocolSpec& spec) {
  return static_cast<std::size_t>(
      std::count_if(spec.moves.begin(), spec.moves.end(), [](const Move& m) { return !m.send.empty(); }));
}

std::size_t message_qubits(const ProtocolSpec& spec) {
  std::size_t total = 0;
  for (const auto& m : spec.moves) total += m.send.size();
  return total;
}

std::size_t first_send_move(const ProtocolSpec& spec) {
  for (std::size_t m = 0; m < spec.moves.size(); ++m)
    if (!spec.moves[m].send.empty()) return m;
  throw ProtocolError("protocol sends no message");
}

std::vector<cplx> basis_amplitudes(std::size_t qubits, std::size_t value) {
  std::vector<cplx> v(std::size_t{1} << qubits);
  if (value >= v.size()) throw RangeError("basis value does not fit the register");
  v[value] = 1.0;
  return v;
}

std::vector<cplx> uniform_amplitudes(std::size_t qubits, std::size_t count) {
  std::vector<cplx> v(std::size_t{1} << qubits);
  if (count == 0 || count > v.size()) throw RangeError("superposition size does not fit the register");
  for (std::size_t i = 0; i < count; ++i) v[i] = 1.0 / std::sqrt(static_cast<double>(count));
  return v;
}

std::optional<std::size_t> basis_value(const InputCase& c, const Register& r, double tol) {
  const auto it = c.amplitudes.find(r.name);
  if (it == c.amplitudes.end()) return 0;
  if (it->second.size() != (std::size_t{1} << r.qubits)) throw SizeError("amplitudes for " + r.name + " have the wrong length");
  for (std::size_t i = 0; i < it->second.size(); ++i)
    if (std::norm(it->second[i]) >= 1.0 - tol) return i;
  return std::nullopt;
}

namespace {

LabeledState initial_state(const ProtocolSpec& spec, const InputCase& c, std::map<std::string, int>& fixed, double tol) {
  LabeledState st;
  for (const auto& r : spec.registers) {
    const auto labels = qubit_labels(r);
    if (r.classical) {
      const auto v = basis_value(c, r, tol);
      if (!v) throw ProtocolError("classical register " + r.name + " is not in a basis state");
      for (std::size_t b = 0; b < r.qubits; ++b) fixed[labels[b]] = static_cast<int>((*v >> (r.qubits - 1 - b)) & 1);
      continue;
    }
    const auto it = c.amplitudes.find(r.name);
    if (is_input(r.role) && it != c.amplitudes.end()) {
      if (it->second.size() != (std::size_t{1} << r.qubits)) {
        throw SizeError("amplitudes for " + r.name + " have the wrong length");
      }
      if (std::abs(norm2(it->second) - 1.0) > tol) throw NormError("input amplitudes for " + r.name + " are not normalized");
      st.append(labels, it->second);
    } else {
      st.append(labels, basis_amplitudes(r.qubits, 0));
    }
  }
  return st;
}

void apply_move(LabeledState& st, const Move& mv, const std::map<std::string, int>& fixed) {
  const std::size_t k = mv.targets.size();
  std::size_t fixed_bits = 0, fixed_mask = 0;
  std::vector<std::string> live;
  std::vector<std::size_t> live_shift;
  for (std::size_t t = 0; t < k; ++t) {
    const std::size_t bit = std::size_t{1} << (k - 1 - t);
    const auto it = fixed.find(mv.targets[t]);
    if (it != fixed.end()) {
      fixed_mask |= bit;
      if (it->second) fixed_bits |= bit;
    } else {
      live.push_back(mv.targets[t]);
      live_shift.push_back(k - 1 - t);
    }
  }
  if (fixed_mask == 0) {
    st.apply(mv.unitary, mv.targets);
    return;
  }
  const std::size_t ld = std::size_t{1} << live.size();
  std::vector<std::size_t> full(ld, fixed_bits);
  for (std::size_t l = 0; l < ld; ++l)
    for (std::size_t t = 0; t < live.size(); ++t)
      if ((l >> (live.size() - 1 - t)) & 1) full[l] |= std::size_t{1} << live_shift[t];
  ComplexMatrix block(ld, ld);
  for (std::size_t r = 0; r < ld; ++r)
    for (std::size_t c = 0; c < ld; ++c) block(r, c) = mv.unitary(full[r], full[c]);
  st.apply(block, live);
}

}  // namespace

LabeledState simulate(const ProtocolSpec& spec, const InputCase& c, std::optional<std::size_t> moves, double tol) {
  std::map<std::string, int> fixed;
  LabeledState st = initial_state(spec, c, fixed, tol);
  const std::size_t stop = std::min(moves.value_or(spec.moves.size()), spec.moves.size());
  for (std::size_t m = 0; m < stop; ++m) apply_move(st, spec.moves[m], fixed);
  return st;
}

DensityMatrix first_message_density(const ProtocolSpec& spec, const InputCase& c, double tol) {
  const std::size_t f = first_send_move(spec);
  const LabeledState st = simulate(spec, c, f + 1, tol);
  return make_density(st.reduced(spec.moves[f].send), tol);
}

RunReport run_protocol(const ProtocolSpec& spec, const InputDistribution& dist, const RunOptions& opt) {
  validate(spec, opt.tol);
  if (dist.empty()) throw DistributionError("empty input distribution");
  double total = 0.0;
  for (const auto& c : dist) {
    if (!(c.weight >= 0.0)) throw DistributionError("negative case weight");
    if (c.target != 0 && c.target != 1) throw RangeError("target must be a bit");
    total += c.weight;
  }
  if (std::abs(total - 1.0) > opt.tol) throw DistributionError("case weights do not sum to 1");

  RunReport rep;
  rep.rounds = message_count(spec);
  rep.message_qubits = message_qubits(spec);
  rep.first_message_qubits = rep.rounds ? spec.moves[first_send_move(spec)].send.size() : 0;
  std::map<int, std::pair<double, double>> slices;  // weight, weighted error
  for (std::size_t i = 0; i < dist.size(); ++i) {
    const InputCase& c = dist[i];
    const LabeledState st = simulate(spec, c, {}, opt.tol);
    double p1 = std::clamp(st.probability_one(spec.output), 0.0, 1.0);
    if (opt.shots > 0) {
      Rng rng(derive_seed(opt.seed, i));
      std::size_t ones = 0;
      for (std::size_t s = 0; s < opt.shots; ++s)
        if (rng.uniform() < p1) ++ones;
      p1 = static_cast<double>(ones) / static_cast<double>(opt.shots);
    }
    rep.p_one.push_back(p1);
    const double err = c.target ? 1.0 - p1 : p1;
    auto& s = slices[c.slice];
    s.first += c.weight;
    s.second += c.weight * err;
  }
  for (const auto& [slice, s] : slices) {
    const double e = s.first > 0.0 ? s.second / s.first : 0.0;
    rep.slice_errors.emplace_back(slice, e);
    rep.error_avg += s.first * e;
  }
  return rep;
}

ComplexMatrix controlled(std::size_t control_qubits, const std::vector<ComplexMatrix>& blocks) {
  if (blocks.empty()) throw SizeError("controlled gate needs at least one block");
  const std::size_t b = blocks[0].rows();
  const std::size_t cd = std::size_t{1} << control_qubits;
  if (blocks.size() > cd) throw SizeError("more blocks than control values");
  ComplexMatrix out(cd * b, cd * b);
  for (std::size_t v = 0; v < cd; ++v) {
    const ComplexMatrix u = v < blocks.size() ? blocks[v] : ComplexMatrix::identity(b);
    if (!u.square() || u.rows() != b) throw SizeError("controlled blocks differ in size");
    for (std::size_t r = 0; r < b; ++r)
      for (std::size_t c = 0; c < b; ++c) out(v * b + r, v * b + c) = u(r, c);
  }
  return out;
}

nlohmann::json to_json(const RunReport& r) {
  nlohmann::json slices = nlohmann::json::array();
  for (const auto& [s, e] : r.slice_errors) slices.push_back({{"slice", s}, {"error", e}});
  return {{"error_avg", r.error_avg},
          {"slice_errors", slices},
          {"info_per_slice", r.info_per_slice},
          {"message_qubits", r.message_qubits},
          {"first_message_qubits", r.first_message_qubits},
          {"rounds", r.rounds},
          {"p_one", r.p_one}};
}

}  // namespace qic
