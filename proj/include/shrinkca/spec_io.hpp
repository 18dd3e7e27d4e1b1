#pragma once

#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "shrinkca/bit_seq.hpp"
#include "shrinkca/cellular_automaton.hpp"
#include "shrinkca/error.hpp"
#include "shrinkca/generators.hpp"
#include "shrinkca/gf2_poly.hpp"
#include "shrinkca/rule_vector.hpp"

namespace shrinkca {

inline std::string bits_to_string(const std::vector<std::uint8_t>& bits) {
  std::string s;
  s.reserve(bits.size());
  for (auto b : bits) s += b ? '1' : '0';
  return s;
}

inline std::vector<std::uint8_t> bits_from_string(const std::string& text) { return BitSeq::parse(text).bits; }

/// Generator document: {"l1", "l2", "c1", "c2", "is1", "is2", "taps"}.
/// Polynomials are exponent lists ("0,3,4"); seeds are bit strings with A_0 first.
/// The seeds may be omitted in a public-parameter document.
inline GeneratorSpec spec_from_json(const nlohmann::json& j) {
  try {
    GeneratorSpec s;
    s.l1 = j.at("l1").get<unsigned>();
    s.l2 = j.at("l2").get<unsigned>();
    s.c1 = Gf2Poly::parse(j.at("c1").get<std::string>());
    s.c2 = Gf2Poly::parse(j.at("c2").get<std::string>());
    if (j.contains("is1") && !j["is1"].is_null()) s.is1 = bits_from_string(j["is1"].get<std::string>());
    if (j.contains("is2") && !j["is2"].is_null()) s.is2 = bits_from_string(j["is2"].get<std::string>());
    if (j.contains("taps")) s.taps = j["taps"].get<std::vector<unsigned>>();
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::Parse, std::string("generator spec: ") + e.what());
  }
}

inline nlohmann::json spec_to_json(const GeneratorSpec& s) {
  nlohmann::json j{{"l1", s.l1}, {"l2", s.l2}, {"c1", s.c1.to_string()}, {"c2", s.c2.to_string()}, {"taps", s.taps}};
  if (s.is1) j["is1"] = bits_to_string(*s.is1);
  if (s.is2) j["is2"] = bits_to_string(*s.is2);
  return j;
}

/// Automaton document: {"rules": "0111001110", "state": "0001110110"}.
inline CaState ca_from_json(const nlohmann::json& j) {
  try {
    CaState st{RuleVector::parse(j.at("rules").get<std::string>()), bits_from_string(j.at("state").get<std::string>())};
    check_ca_state(st);
    return st;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::Parse, std::string("automaton spec: ") + e.what());
  }
}

inline nlohmann::json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidArgument, "cannot open " + path);
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::Parse, path + ": " + e.what());
  }
}

}  // namespace shrinkca
