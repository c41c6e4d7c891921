// JSON serialization for A-infinity data and functor components.
//
//   {"objects": [...],
//    "hom": [{"src": i, "dst": j, "degrees": [...]}],
//    "mu":  [{"chain": [X_0..X_n], "inputs": [b_1..b_n], "output": b_0,
//             "coeff": [num, den]}]}
//   {"object_map": [...], "phi": [entries as for "mu"]}
#pragma once

#include <json.hpp>

#include "ainfty.hpp"

namespace multiquilt {

using json = nlohmann::ordered_json;

inline json rat_to_json(const Rat& r) { return json::array({r.numerator(), r.denominator()}); }
inline Rat rat_from_json(const json& j) {
  if (j.is_number_integer()) return Rat(j.get<long long>());
  return Rat(j.at(0).get<long long>(), j.at(1).get<long long>());
}

inline json ainfty_to_json(const AInftyData& A) {
  json j;
  j["objects"] = A.objects;
  j["hom"] = json::array();
  for (const auto& [key, degrees] : A.hom)
    j["hom"].push_back(json{{"src", key.first}, {"dst", key.second}, {"degrees", degrees}});
  j["mu"] = json::array();
  for (const auto& [key, col] : A.mu) {
    int n = key[0];
    std::vector<int> chain(key.begin() + 1, key.begin() + 2 + n);
    std::vector<int> inputs(key.begin() + 2 + n, key.end());
    for (const auto& [out, c] : col)
      j["mu"].push_back(json{
          {"chain", chain}, {"inputs", inputs}, {"output", out}, {"coeff", rat_to_json(c)}});
  }
  return j;
}

inline AInftyData ainfty_from_json(const json& j) {
  AInftyData A;
  A.objects = j.at("objects").get<std::vector<std::string>>();
  for (const auto& jh : j.at("hom"))
    A.hom[{jh.at("src").get<int>(), jh.at("dst").get<int>()}] =
        jh.at("degrees").get<std::vector<int>>();
  for (const auto& jm : j.at("mu"))
    A.set_mu(jm.at("chain").get<std::vector<int>>(), jm.at("inputs").get<std::vector<int>>(),
             jm.at("output").get<int>(), rat_from_json(jm.at("coeff")));
  return A;
}

inline json functor_to_json(const FunctorData& F) {
  json j;
  j["object_map"] = F.object_map;
  j["phi"] = json::array();
  for (const auto& [key, col] : F.phi) {
    int n = key[0];
    std::vector<int> chain(key.begin() + 1, key.begin() + 2 + n);
    std::vector<int> inputs(key.begin() + 2 + n, key.end());
    for (const auto& [out, c] : col)
      j["phi"].push_back(json{
          {"chain", chain}, {"inputs", inputs}, {"output", out}, {"coeff", rat_to_json(c)}});
  }
  return j;
}

inline FunctorData functor_from_json(const json& j) {
  FunctorData F;
  F.object_map = j.at("object_map").get<std::vector<int>>();
  for (const auto& jp : j.at("phi"))
    F.set_phi(jp.at("chain").get<std::vector<int>>(), jp.at("inputs").get<std::vector<int>>(),
              jp.at("output").get<int>(), rat_from_json(jp.at("coeff")));
  return F;
}

}  // namespace multiquilt
