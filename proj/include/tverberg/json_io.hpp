#pragma once

// JSON views of library results; key order is fixed so output is
// byte-stable for a given input.

#include "tverberg/centerpoint.hpp"
#include "tverberg/formulas.hpp"
#include "tverberg/montecarlo.hpp"
#include "tverberg/sampling.hpp"
#include "tverberg/separability.hpp"

#include "json.hpp"

#include <string>
#include <vector>

namespace tverberg {

using Json = nlohmann::ordered_json;

inline Json point_json(const Point& p) {
  Json a = Json::array();
  for (Index k = 0; k < p.size(); ++k) a.push_back(p(k));
  return a;
}

inline Point point_from_json(const Json& j) {
  if (!j.is_array()) throw InputError("point must be a JSON array");
  Point p(static_cast<Index>(j.size()));
  for (std::size_t k = 0; k < j.size(); ++k) p(static_cast<Index>(k)) = j[k].get<double>();
  return p;
}

inline Json index_list_json(const std::vector<Index>& v) {
  Json a = Json::array();
  for (Index i : v) a.push_back(i);
  return a;
}

inline Json to_json(const BalancedDistribution& d) {
  Json j;
  j["kind"] = to_string(d.kind);
  j["dim"] = d.dim;
  j["center"] = point_json(d.center_or_origin());
  return j;
}

inline BalancedDistribution distribution_from_json(const Json& j) {
  BalancedDistribution d;
  d.kind = distribution_from_string(j.at("kind").get<std::string>());
  d.dim = j.at("dim").get<Index>();
  if (j.contains("center")) d.center = point_from_json(j.at("center"));
  d.validate();
  return d;
}

inline Json to_json(const ModelSpec& s) {
  Json j;
  j["model"] = to_string(s.model);
  j["m"] = s.colors;
  if (s.model == PartitionModel::Equipartition)
    j["n"] = s.per_color;
  else
    j["k"] = s.total;
  j["dist"] = to_json(s.dist);
  j["seed"] = s.seed;
  return j;
}

inline ModelSpec model_spec_from_json(const Json& j) {
  ModelSpec s;
  s.model = partition_model_from_string(j.at("model").get<std::string>());
  s.colors = j.at("m").get<Index>();
  if (s.model == PartitionModel::Equipartition)
    s.per_color = j.at("n").get<Index>();
  else
    s.total = j.at("k").get<Index>();
  s.dist = distribution_from_json(j.at("dist"));
  s.seed = j.value("seed", std::uint64_t{0});
  s.validate();
  return s;
}

inline Json to_json(const BoundReport& r) {
  Json j;
  j["formula_id"] = to_string(r.formula_id);
  Json params = Json::object();
  for (const auto& [k, v] : r.params) params[k] = v;
  j["params"] = params;
  j["value"] = r.value;
  j["side"] = to_string(r.side);
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

inline Json to_json(const TrialEstimate& e) {
  Json j;
  j["event_id"] = e.event_id;
  j["successes"] = e.successes;
  j["trials"] = e.trials;
  j["estimate"] = e.estimate;
  j["ci_low"] = e.ci_low;
  j["ci_high"] = e.ci_high;
  j["seed"] = e.seed;
  j["empty_class_trials"] = e.empty_class_trials;
  return j;
}

inline Json to_json(const SweepRow& r) {
  Json j;
  j["m"] = r.m;
  j["n"] = r.n;
  j["k"] = r.k;
  j["d"] = r.d;
  j["t"] = r.t;
  j["c"] = r.c;
  j["estimate"] = to_json(r.est);
  j["lower_bound"] = r.lower_bound ? Json(*r.lower_bound) : Json(nullptr);
  j["upper_bound"] = r.upper_bound ? Json(*r.upper_bound) : Json(nullptr);
  j["violation"] = r.violation;
  return j;
}

inline Json to_json(const PertsepRow& r) {
  Json j;
  j["m"] = r.m;
  j["k"] = r.k;
  j["d"] = r.d;
  j["trials"] = r.trials;
  j["mean"] = r.mean;
  j["p5"] = r.p5;
  j["min"] = r.min;
  j["max"] = r.max;
  return j;
}

inline Json to_json(const CenterpointResult& r) {
  Json j;
  j["point"] = point_json(r.point);
  j["certified_depth"] = r.certified_depth;
  j["measured_depth"] = r.measured_depth ? Json(*r.measured_depth) : Json(nullptr);
  j["attempts"] = r.attempts;
  j["method"] = to_string(r.method);
  return j;
}

inline Json to_json(const ToleranceResult& r) {
  Json j;
  j["tolerance"] = r.tolerance;
  j["breaking_set"] = index_list_json(r.breaking_set);
  j["at_cap"] = r.at_cap;
  return j;
}

inline Json to_json(const CondNumberReport& r) {
  Json j;
  j["n"] = r.n;
  j["min_removals"] = r.min_removals;
  j["pertsep0"] = r.pertsep0;
  j["removal_set"] = index_list_json(r.removal_set);
  j["tolerance"] = r.tolerance ? Json(*r.tolerance) : Json(nullptr);
  j["removal_equivalence"] = r.removal_equivalence ? Json(*r.removal_equivalence) : Json(nullptr);
  j["degnsep"] = r.degnsep ? Json(*r.degnsep) : Json(nullptr);
  return j;
}

}  // namespace tverberg
