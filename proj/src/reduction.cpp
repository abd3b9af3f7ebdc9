#include "qic/reduction.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "qic/entropy.hpp"
#include "qic/errors.hpp"
#include "qic/metrics.hpp"
#include "qic/sk_problem.hpp"
#include "qic/transition.hpp"

namespace qic {

namespace {

std::vector<std::string> concat(std::vector<std::string> a, const std::vector<std::string>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

bool contains(const std::vector<std::string>& v, const std::string& s) {
  return std::find(v.begin(), v.end(), s) != v.end();
}

std::string fresh_name(const ProtocolSpec& spec, std::string name) {
  auto taken = [&](const std::string& n) {
    return std::any_of(spec.registers.begin(), spec.registers.end(), [&](const Register& r) { return r.name == n; });
  };
  while (taken(name)) name += "_";
  return name;
}

std::map<std::string, Player> owners_after(const ProtocolSpec& spec, std::size_t moves) {
  std::map<std::string, Player> o;
  for (const auto& r : spec.registers)
    for (const auto& l : qubit_labels(r)) o[l] = r.owner;
  for (std::size_t m = 0; m < std::min(moves, spec.moves.size()); ++m)
    for (const auto& l : spec.moves[m].send) o[l] = other(spec.moves[m].player);
  return o;
}

std::vector<std::string> simulated_labels(const ProtocolSpec& spec) {
  std::vector<std::string> out;
  for (const auto& r : spec.registers)
    if (!r.classical) out = concat(out, qubit_labels(r));
  return out;
}

void remove_value(LabeledState& st, const std::vector<std::string>& labels, std::size_t value) {
  const std::size_t q = labels.size();
  for (std::size_t b = 0; b < q; ++b) st.remove_fixed(labels[b], static_cast<int>((value >> (q - 1 - b)) & 1));
}

ComplexMatrix xor_pattern(std::size_t q, std::size_t v) {
  const std::size_t d = std::size_t{1} << q;
  ComplexMatrix p(d, d);
  for (std::size_t c = 0; c < d; ++c) p(c ^ v, c) = 1.0;
  return p;
}

// Case with Y_j = z and the other slots in uniform superposition.
InputCase slice_case(const ProtocolSpec& spec, const SliceLayout& s, std::size_t j, std::size_t z) {
  InputCase c;
  for (std::size_t i = 0; i < s.registers.size(); ++i) {
    const std::size_t q = find_register(spec, s.registers[i]).qubits;
    c.amplitudes[s.registers[i]] = i == j ? basis_amplitudes(q, z) : uniform_amplitudes(q, s.values);
  }
  return c;
}

}  // namespace

InfoBudget message_info_budget(const ProtocolSpec& spec, const InputDistribution& dist,
                               const std::vector<std::string>& slices, double tol) {
  validate(spec, tol);
  InfoBudget out;
  out.ell1 = spec.moves[first_send_move(spec)].send.size();
  std::vector<DensityMatrix> rho;
  double total = 0.0;
  for (const auto& c : dist) {
    rho.push_back(first_message_density(spec, c, tol));
    total += c.weight;
  }
  std::vector<std::vector<std::size_t>> values(dist.size());
  std::size_t joint_bits = 0;
  for (const auto& name : slices) {
    const Register& r = find_register(spec, name);
    joint_bits += r.qubits;
    for (std::size_t i = 0; i < dist.size(); ++i) {
      const auto v = basis_value(dist[i], r, tol);
      if (!v) throw SliceError("register " + name + " is not classical in every case");
      values[i].push_back(*v);
    }
  }

  auto holevo_of = [&](unsigned bits, auto label_of) {
    std::map<std::uint64_t, std::pair<double, ComplexMatrix>> groups;
    for (std::size_t i = 0; i < dist.size(); ++i) {
      auto& g = groups[label_of(i)];
      if (g.second.empty()) g.second = ComplexMatrix(rho[i].dim(), rho[i].dim());
      g.first += dist[i].weight;
      g.second += rho[i].mat() * cplx(dist[i].weight);
    }
    std::vector<std::uint64_t> labels;
    std::vector<double> priors;
    std::vector<DensityMatrix> states;
    for (auto& [label, g] : groups) {
      if (g.first <= 0.0) continue;
      labels.push_back(label);
      priors.push_back(g.first / total);
      states.push_back(make_density(g.second * cplx(1.0 / g.first), tol));
    }
    return holevo_information(CQEnsemble(bits, labels, priors, states, tol));
  };

  for (std::size_t s = 0; s < slices.size(); ++s) {
    const unsigned bits = static_cast<unsigned>(find_register(spec, slices[s]).qubits);
    out.mu.push_back(holevo_of(bits, [&](std::size_t i) { return static_cast<std::uint64_t>(values[i][s]); }));
  }
  if (!slices.empty() && joint_bits <= 16) {
    out.joint = holevo_of(static_cast<unsigned>(joint_bits), [&](std::size_t i) {
      std::uint64_t label = 0;
      for (std::size_t s = 0; s < slices.size(); ++s) {
        label = (label << find_register(spec, slices[s]).qubits) | values[i][s];
      }
      return label;
    });
  }
  return out;
}

ModifiedProtocol modify_first_message(const ProtocolSpec& p, const SliceLayout& slices, std::size_t j, double tol) {
  validate(p, tol);
  if (j >= slices.registers.size()) throw RangeError("pointer out of range");
  const std::size_t f = first_send_move(p);
  for (std::size_t m = 0; m <= f; ++m)
    if (p.moves[m].player != Player::Bob) throw ReductionError("the first message must come from Bob, the wrong player");
  const Register& yj_reg = find_register(p, slices.registers[j]);
  for (const auto& name : slices.registers) {
    const Register& r = find_register(p, name);
    if (r.role != Role::BobInput || r.classical || r.qubits != yj_reg.qubits ||
        (std::size_t{1} << r.qubits) < slices.values) {
      throw ReductionError("slot " + name + " is not a quantum Bob input of the layout size");
    }
  }
  const std::size_t q = yj_reg.qubits;
  const auto yj = qubit_labels(yj_reg);

  ModifiedProtocol mp;
  mp.j = j;
  mp.slices = slices;
  mp.psi = fresh_name(p, "psi");
  ProtocolSpec& s = mp.spec;
  s = p;
  for (auto& r : s.registers)
    if (r.name != yj_reg.name && contains(slices.registers, r.name)) r.role = Role::BobWork;
  s.registers.push_back({mp.psi, q, Role::BobWork, Player::Bob, false});
  const auto psi = register_qubits(s, mp.psi);

  // Bob prepares the other slots and psi in uniform superposition.
  const ComplexMatrix prep1 = unitary_with_first_column(uniform_amplitudes(q, slices.values));
  std::vector<std::string> prep_targets;
  ComplexMatrix prep = ComplexMatrix::identity(1);
  for (const auto& name : slices.registers) {
    if (name == yj_reg.name) continue;
    prep_targets = concat(prep_targets, register_qubits(s, name));
    prep = tensor(prep, prep1);
  }
  prep_targets = concat(prep_targets, psi);
  prep = tensor(prep, prep1);

  s.moves.clear();
  s.moves.push_back({Player::Bob, prep, prep_targets, {}, "prepare slots"});
  auto relabel = [&](std::vector<std::string> v) {
    for (auto& l : v)
      for (std::size_t b = 0; b < q; ++b)
        if (l == yj[b]) l = psi[b];
    return v;
  };
  for (std::size_t m = 0; m <= f; ++m) {
    Move mv = p.moves[m];
    mv.targets = relabel(mv.targets);
    mv.send = relabel(mv.send);
    s.moves.push_back(std::move(mv));
  }
  mp.t_move = s.moves.size();
  s.moves.push_back({Player::Bob, {}, {}, {}, "align"});
  for (std::size_t m = f + 1; m < p.moves.size(); ++m) s.moves.push_back(p.moves[m]);

  mp.message = p.moves[f].send;
  const auto owners = owners_after(s, mp.t_move);
  std::vector<std::string> alice_rest;
  for (const auto& l : simulated_labels(s)) {
    if (contains(yj, l) || contains(mp.message, l)) continue;
    (owners.at(l) == Player::Bob ? mp.bob_rest : alice_rest).push_back(l);
  }
  if (q + mp.bob_rest.size() > 8) throw SizeError("alignment move would exceed 8 qubits");

  std::vector<ComplexMatrix> t_blocks;
  for (std::size_t z = 0; z < slices.values; ++z) {
    const InputCase c = slice_case(p, slices, j, z);
    LabeledState a = simulate(p, c, f + 1, tol);
    LabeledState b = simulate(s, c, mp.t_move, tol);
    try {
      remove_value(a, yj, z);
      remove_value(b, yj, z);
      for (const auto& l : alice_rest) {
        if (a.has(l)) a.remove_fixed(l, 0);
        b.remove_fixed(l, 0);
      }
    } catch (const WeightError& e) {
      throw ReductionError(std::string("cannot isolate the first-move state: ") + e.what());
    }
    a.append(psi, basis_amplitudes(q, 0));
    const BipartitePureState phi = a.split(mp.message, mp.bob_rest);
    const BipartitePureState phi_prime = b.split(mp.message, mp.bob_rest);
    const TransitionResult tr = uhlmann_align(phi, phi_prime, tol);
    t_blocks.push_back(tr.unitary_k);
    mp.t_z.push_back(trace_distance(phi.reduced(Keep::H), phi_prime.reduced(Keep::H)));
    mp.align_distance.push_back(pure_trace_distance(phi.vec(), apply_k(phi_prime, tr.unitary_k)));
    mp.align_bound.push_back(tr.bound);
  }
  s.moves[mp.t_move].unitary = controlled(q, t_blocks);
  s.moves[mp.t_move].targets = concat(yj, mp.bob_rest);
  validate(s, tol);
  return mp;
}

ZeroInfoReport certify_modification(const ProtocolSpec& p, const ModifiedProtocol& mp, const InputDistribution& dist_j,
                                    double tol) {
  ZeroInfoReport r;
  r.j = mp.j;
  const std::string& yj = mp.slices.registers[mp.j];
  r.epsilon_j = run_protocol(p, dist_j, {0, 0, tol}).error_avg;
  r.delta_j = run_protocol(mp.spec, dist_j, {0, 0, tol}).error_avg;
  r.mu_j = std::max(0.0, message_info_budget(p, dist_j, {yj}, tol).mu[0]);
  r.mu_j_prime = message_info_budget(mp.spec, dist_j, {yj}, tol).mu[0];
  const Register& reg = find_register(p, yj);
  std::vector<double> pz(mp.t_z.size(), 0.0);
  double total = 0.0;
  for (const auto& c : dist_j) {
    const auto z = basis_value(c, reg, tol);
    if (!z || *z >= pz.size()) throw SliceError("Y_j is not a classical slot value in every case");
    pz[*z] += c.weight;
    total += c.weight;
  }
  for (std::size_t z = 0; z < pz.size(); ++z) r.mean_sqrt_t += pz[z] / total * std::sqrt(mp.t_z[z]);
  r.chain_slack = r.epsilon_j + 2.0 * r.mean_sqrt_t - r.delta_j;
  r.info_slack = r.epsilon_j + 4.0 * std::pow(r.mu_j, 0.25) - r.delta_j;
  return r;
}

DroppedProtocol drop_first_message(const ModifiedProtocol& mp, double tol) {
  const ProtocolSpec& s = mp.spec;
  const Register& yj_reg = find_register(s, mp.slices.registers[mp.j]);
  const std::size_t q = yj_reg.qubits;
  const auto yj = qubit_labels(yj_reg);
  const double vtol = kDefaultTol.validation;

  DroppedProtocol dp;
  std::vector<DensityMatrix> rho;
  for (std::size_t z = 0; z < mp.slices.values; ++z)
    rho.push_back(first_message_density(s, slice_case(s, mp.slices, mp.j, z), vtol));
  for (const auto& r : rho) dp.rho_m_spread = std::max(dp.rho_m_spread, trace_distance(r, rho[0]));
  if (dp.rho_m_spread > tol) throw ReductionError("first message still depends on Y_j");
  const std::vector<double> w(rho.size(), 1.0 / static_cast<double>(rho.size()));
  const DensityMatrix rho_m = mixture(w, rho, vtol);
  dp.rank = numerical_rank(rho_m, vtol);
  dp.b_qubits = ceil_log2(dp.rank);
  dp.j_qubits = ceil_log2(mp.slices.registers.size());
  const BipartitePureState purification = canonical_purification(rho_m, std::size_t{1} << dp.b_qubits, vtol);

  ProtocolSpec& out = dp.spec;
  out.registers = s.registers;
  out.decider = s.decider;
  out.output = s.output;
  for (auto& r : out.registers) {
    const auto labels = qubit_labels(r);
    const auto in_msg = std::count_if(labels.begin(), labels.end(), [&](const auto& l) { return contains(mp.message, l); });
    if (in_msg == 0) continue;
    if (static_cast<std::size_t>(in_msg) != labels.size()) throw ReductionError("first message splits register " + r.name);
    r.owner = Player::Alice;
    r.role = Role::Message;
  }
  std::vector<std::string> b_labels, j_labels;
  if (dp.b_qubits > 0) {
    const std::string name = fresh_name(out, "B");
    out.registers.push_back({name, dp.b_qubits, Role::Message, Player::Alice, false});
    b_labels = register_qubits(out, name);
  }
  if (dp.j_qubits > 0) {
    const std::string name = fresh_name(out, "jmsg");
    out.registers.push_back({name, dp.j_qubits, Role::Message, Player::Alice, false});
    j_labels = register_qubits(out, name);
  }
  ComplexMatrix prep = unitary_with_first_column(purification.vec());
  if (dp.j_qubits > 0) prep = tensor(prep, xor_pattern(dp.j_qubits, mp.j));
  out.moves.push_back({Player::Alice, prep, concat(concat(mp.message, b_labels), j_labels), {}, "purify"});

  std::size_t g = mp.t_move + 1;
  while (g < s.moves.size() && s.moves[g].send.empty()) ++g;
  if (g == s.moves.size() || s.moves[g].player != Player::Alice) {
    throw ReductionError("the second message must come from Alice");
  }
  std::vector<Move> bob_pre;
  for (std::size_t m = mp.t_move + 1; m <= g; ++m) {
    if (s.moves[m].player == Player::Alice) {
      out.moves.push_back(s.moves[m]);
    } else {
      bob_pre.push_back(s.moves[m]);
    }
  }
  out.moves.back().send = concat(concat(out.moves.back().send, b_labels), j_labels);

  const std::vector<std::string> k_side = concat(b_labels, mp.bob_rest);
  if (q + k_side.size() > 8) throw SizeError("Bob's transition move would exceed 8 qubits");
  ProtocolSpec start = out;
  start.moves.resize(1);
  std::vector<ComplexMatrix> v_blocks;
  for (std::size_t z = 0; z < mp.slices.values; ++z) {
    const InputCase c = slice_case(s, mp.slices, mp.j, z);
    LabeledState chi = simulate(s, c, mp.t_move + 1, vtol);
    remove_value(chi, yj, z);
    chi.append(b_labels, basis_amplitudes(dp.b_qubits, 0));
    chi.append(j_labels, basis_amplitudes(dp.j_qubits, mp.j));
    LabeledState xi = simulate(start, c, 1, vtol);
    remove_value(xi, yj, z);
    std::vector<std::string> h_side;
    for (const auto& l : xi.labels())
      if (!contains(k_side, l)) h_side.push_back(l);
    try {
      v_blocks.push_back(exact_local_transition(chi.split(h_side, k_side), xi.split(h_side, k_side), tol));
    } catch (const PreconditionError& e) {
      throw ReductionError(std::string("prepared state does not match the first-message state: ") + e.what());
    }
  }
  out.moves.push_back({Player::Bob, controlled(q, v_blocks), concat(yj, k_side), {}, "local transition"});
  for (auto& m : bob_pre) out.moves.push_back(std::move(m));
  for (std::size_t m = g + 1; m < s.moves.size(); ++m) out.moves.push_back(s.moves[m]);
  validate(out, vtol);
  return dp;
}

DropReport certify_drop(const ModifiedProtocol& mp, const DroppedProtocol& dp, const InputDistribution& dist_j,
                        double tol) {
  const RunReport a = run_protocol(mp.spec, dist_j, {0, 0, tol});
  const RunReport b = run_protocol(dp.spec, dist_j, {0, 0, tol});
  DropReport r;
  for (std::size_t i = 0; i < a.p_one.size(); ++i) r.tv_max = std::max(r.tv_max, std::abs(a.p_one[i] - b.p_one[i]));
  r.error_prime = a.error_avg;
  r.error_dprime = b.error_avg;
  r.rounds_prime = a.rounds;
  r.rounds_dprime = b.rounds;
  r.qubits_prime = a.message_qubits;
  r.qubits_dprime = b.message_qubits;
  r.qubit_budget = a.message_qubits + ceil_log2(mp.slices.registers.size());
  return r;
}

PipelineReport run_pipeline(const PipelineInput& in, double tol) {
  PipelineReport rep;
  rep.name = in.name;
  rep.n = in.slices.registers.size();
  if (in.per_pointer.size() != rep.n) throw SizeError("need one a = j distribution per slot");
  rep.epsilon = run_protocol(in.protocol, in.uniform, {0, 0, tol}).error_avg;
  rep.ell = message_qubits(in.protocol);
  rep.budget = message_info_budget(in.protocol, in.uniform, in.slices.registers, tol);
  for (std::size_t j = 0; j < rep.n; ++j) {
    const ModifiedProtocol mp = modify_first_message(in.protocol, in.slices, j, tol);
    rep.zero.push_back(certify_modification(in.protocol, mp, in.per_pointer[j], tol));
    const DroppedProtocol dp = drop_first_message(mp);
    rep.drop.push_back(certify_drop(mp, dp, in.per_pointer[j], tol));
    rep.epsilon_prime += rep.drop.back().error_dprime / static_cast<double>(rep.n);
    rep.chain_bound += (rep.zero.back().epsilon_j + 2.0 * rep.zero.back().mean_sqrt_t) / static_cast<double>(rep.n);
  }
  rep.vacuous_bound = rep.epsilon + 4.0 * std::pow(static_cast<double>(rep.ell) / static_cast<double>(rep.n), 0.25);
  return rep;
}

nlohmann::json to_json(const InfoBudget& b) { return {{"mu", b.mu}, {"ell1", b.ell1}, {"joint", b.joint}}; }

nlohmann::json to_json(const ZeroInfoReport& r) {
  return {{"j", r.j},           {"epsilon_j", r.epsilon_j},     {"delta_j", r.delta_j},
          {"mu_j", r.mu_j},     {"mu_j_prime", r.mu_j_prime},   {"mean_sqrt_t", r.mean_sqrt_t},
          {"chain_slack", r.chain_slack}, {"info_slack", r.info_slack}};
}

nlohmann::json to_json(const DropReport& r) {
  return {{"tv_max", r.tv_max},
          {"error_prime", r.error_prime},
          {"error_dprime", r.error_dprime},
          {"rounds_prime", r.rounds_prime},
          {"rounds_dprime", r.rounds_dprime},
          {"qubits_prime", r.qubits_prime},
          {"qubits_dprime", r.qubits_dprime},
          {"qubit_budget", r.qubit_budget}};
}

nlohmann::json to_json(const PipelineReport& r) {
  nlohmann::json zero = nlohmann::json::array(), drop = nlohmann::json::array();
  for (const auto& z : r.zero) zero.push_back(to_json(z));
  for (const auto& d : r.drop) drop.push_back(to_json(d));
  return {{"name", r.name},
          {"epsilon", r.epsilon},
          {"epsilon_prime", r.epsilon_prime},
          {"vacuous_bound", r.vacuous_bound},
          {"chain_bound", r.chain_bound},
          {"ell", r.ell},
          {"n", r.n},
          {"budget", to_json(r.budget)},
          {"zero_info", zero},
          {"drop", drop}};
}

}  // namespace qic
