// JSON serialization for (metric) colored ribbon trees.
//
// Tree format:
//   {"d": int, "root": id,
//    "vertices": [{"id": int, "colored": bool,
//                  "slots": [{"child": id} | {"leaf": int}]}]}
// Metric trees additionally carry
//   "lambda": [{"edge": [parent, child], "len": number | "inf"}]
// Field order is canonical (as listed) and round-trips are bit-stable.
#pragma once

#include <json.hpp>

#include "moduli.hpp"
#include "trees.hpp"

namespace multiquilt {

using json = nlohmann::ordered_json;

inline json tree_to_json(const RibbonTree& t) {
  json j;
  j["d"] = t.d;
  j["root"] = t.root;
  j["vertices"] = json::array();
  for (const auto& v : t.vertices) {
    json jv;
    jv["id"] = v.id;
    jv["colored"] = v.colored;
    jv["slots"] = json::array();
    for (const auto& s : v.slots) {
      if (s.is_leaf())
        jv["slots"].push_back(json{{"leaf", s.leaf}});
      else
        jv["slots"].push_back(json{{"child", s.child}});
    }
    j["vertices"].push_back(std::move(jv));
  }
  return j;
}

inline RibbonTree tree_from_json(const json& j) {
  RibbonTree t;
  t.d = j.at("d").get<int>();
  t.root = j.at("root").get<int>();
  for (const auto& jv : j.at("vertices")) {
    Vertex v;
    v.id = jv.at("id").get<int>();
    v.colored = jv.value("colored", false);
    for (const auto& js : jv.at("slots")) {
      if (js.contains("leaf"))
        v.slots.push_back(Slot{-1, js.at("leaf").get<int>()});
      else
        v.slots.push_back(Slot{js.at("child").get<int>(), 0});
    }
    t.vertices.push_back(std::move(v));
  }
  // vertex records may arrive in any order; index them by id
  std::sort(t.vertices.begin(), t.vertices.end(),
            [](const Vertex& a, const Vertex& b) { return a.id < b.id; });
  return t;
}

inline json metric_to_json(const MetricTree& mt) {
  json j = tree_to_json(mt.tree);
  j["lambda"] = json::array();
  for (int e : edge_children(mt.tree)) {
    auto it = mt.lambda.find(e);
    if (it == mt.lambda.end()) continue;
    json je;
    je["edge"] = json::array({detail::find_parent(mt.tree, e), e});
    if (it->second.inf)
      je["len"] = "inf";
    else
      je["len"] = it->second.value;
    j["lambda"].push_back(std::move(je));
  }
  return j;
}

inline MetricTree metric_from_json(const json& j) {
  MetricTree mt;
  mt.tree = tree_from_json(j);
  for (const auto& je : j.at("lambda")) {
    int child = je.at("edge").at(1).get<int>();
    if (je.at("len").is_string()) {
      if (je.at("len").get<std::string>() != "inf")
        throw std::invalid_argument("metric_from_json: bad length marker");
      mt.lambda[child] = ExtLen::infinity();
    } else {
      mt.lambda[child] = ExtLen::finite(je.at("len").get<double>());
    }
  }
  return mt;
}

}  // namespace multiquilt
