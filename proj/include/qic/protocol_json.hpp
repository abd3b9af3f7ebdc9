#pragma once

#include <json.hpp>

#include "qic/protocol.hpp"

namespace qic {

// I, X, Y, Z, H, S, T, CNOT, CZ, SWAP, RY(theta). Unknown names throw FormatError.
ComplexMatrix named_gate(const std::string& name, double theta = 0.0);

// Moves carry "unitary" either as a matrix object or as {"gate": name,
// "theta": angle}. Writing always emits the matrix form.
nlohmann::json to_json(const ProtocolSpec& spec);
ProtocolSpec protocol_from_json(const nlohmann::json& j);

nlohmann::json to_json(const InputCase& c);
InputCase input_case_from_json(const nlohmann::json& j);

}  // namespace qic
