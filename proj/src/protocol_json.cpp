#include "qic/protocol_json.hpp"

#include <cmath>
#include <numbers>

#include "qic/errors.hpp"

namespace qic {

ComplexMatrix named_gate(const std::string& name, double theta) {
  const cplx i{0.0, 1.0};
  const double r = 1.0 / std::numbers::sqrt2;
  if (name == "I") return ComplexMatrix::identity(2);
  if (name == "X") return {2, 2, {0, 1, 1, 0}};
  if (name == "Y") return {2, 2, {0, -i, i, 0}};
  if (name == "Z") return {2, 2, {1, 0, 0, -1}};
  if (name == "H") return {2, 2, {r, r, r, -r}};
  if (name == "S") return {2, 2, {1, 0, 0, i}};
  if (name == "T") return {2, 2, {1, 0, 0, std::polar(1.0, std::numbers::pi / 4)}};
  if (name == "RY") {
    const double c = std::cos(theta / 2), s = std::sin(theta / 2);
    return {2, 2, {c, -s, s, c}};
  }
  if (name == "CNOT") return {4, 4, {1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0}};
  if (name == "CZ") return ComplexMatrix::diagonal(std::vector<double>{1, 1, 1, -1});
  if (name == "SWAP") return {4, 4, {1, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 1}};
  throw FormatError("unknown gate " + name);
}

namespace {

Player player_from(const nlohmann::json& j) {
  const auto s = j.get<std::string>();
  if (s == "alice") return Player::Alice;
  if (s == "bob") return Player::Bob;
  throw FormatError("unknown player " + s);
}

Role role_from(const std::string& s) {
  for (Role r : {Role::AliceInput, Role::BobInput, Role::AliceWork, Role::BobWork, Role::Message})
    if (s == to_string(r)) return r;
  throw FormatError("unknown role " + s);
}

}  // namespace

nlohmann::json to_json(const ProtocolSpec& spec) {
  nlohmann::json regs = nlohmann::json::array();
  for (const auto& r : spec.registers) {
    regs.push_back({{"name", r.name},
                    {"qubits", r.qubits},
                    {"role", to_string(r.role)},
                    {"owner", to_string(r.owner)},
                    {"classical", r.classical}});
  }
  nlohmann::json moves = nlohmann::json::array();
  for (const auto& m : spec.moves) {
    nlohmann::json mv{{"player", to_string(m.player)},
                      {"unitary", to_json(m.unitary)},
                      {"targets", m.targets},
                      {"send", m.send}};
    if (!m.note.empty()) mv["note"] = m.note;
    moves.push_back(std::move(mv));
  }
  return {{"registers", regs}, {"moves", moves}, {"decider", to_string(spec.decider)}, {"output", spec.output}};
}

ProtocolSpec protocol_from_json(const nlohmann::json& j) {
  try {
    ProtocolSpec spec;
    for (const auto& r : j.at("registers")) {
      Register reg;
      reg.name = r.at("name").get<std::string>();
      reg.qubits = r.at("qubits").get<std::size_t>();
      reg.role = role_from(r.at("role").get<std::string>());
      if (r.contains("owner")) {
        reg.owner = player_from(r.at("owner"));
      } else {
        reg.owner = (reg.role == Role::AliceInput || reg.role == Role::AliceWork) ? Player::Alice : Player::Bob;
      }
      reg.classical = r.value("classical", false);
      spec.registers.push_back(std::move(reg));
    }
    for (const auto& m : j.at("moves")) {
      Move mv;
      mv.player = player_from(m.at("player"));
      const auto& u = m.at("unitary");
      mv.unitary = u.contains("gate") ? named_gate(u.at("gate").get<std::string>(), u.value("theta", 0.0))
                                      : matrix_from_json(u);
      mv.targets = m.at("targets").get<std::vector<std::string>>();
      mv.send = m.value("send", std::vector<std::string>{});
      mv.note = m.value("note", std::string{});
      spec.moves.push_back(std::move(mv));
    }
    spec.decider = player_from(j.at("decider"));
    spec.output = j.at("output").get<std::string>();
    return spec;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("bad protocol json: ") + e.what());
  }
}

nlohmann::json to_json(const InputCase& c) {
  nlohmann::json amps = nlohmann::json::object();
  for (const auto& [name, v] : c.amplitudes) amps[name] = vector_to_json(v);
  return {{"weight", c.weight}, {"target", c.target}, {"slice", c.slice}, {"amplitudes", amps}};
}

InputCase input_case_from_json(const nlohmann::json& j) {
  try {
    InputCase c;
    c.weight = j.at("weight").get<double>();
    c.target = j.at("target").get<int>();
    c.slice = j.value("slice", 0);
    for (const auto& [name, v] : j.at("amplitudes").items()) c.amplitudes[name] = vector_from_json(v);
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("bad input case json: ") + e.what());
  }
}

}  // namespace qic
