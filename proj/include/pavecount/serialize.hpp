#pragma once

// JSON / CSV interchange. Subsets are sorted integer arrays, counts are decimal
// strings, matroids are {"n", "rank", "bases"} with bases in colex order.

#include "pavecount/bigcount.hpp"
#include "pavecount/bounds.hpp"
#include "pavecount/constructions.hpp"
#include "pavecount/graph.hpp"
#include "pavecount/ksubset.hpp"
#include "pavecount/matroid.hpp"
#include "pavecount/stable_count.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

namespace pavecount {

using nlohmann::json;

inline json to_json(const KSubset& s) { return s.members(); }

inline json to_json(const std::vector<KSubset>& v) {
  json a = json::array();
  for (const auto& s : v) a.push_back(to_json(s));
  return a;
}

inline json to_json(const BigCount& x) { return to_decimal(x); }

inline json to_json(const Matroid& m) {
  json bases = json::array();
  for (const auto& b : m.bases()) bases.push_back(to_json(b));
  return {{"n", m.n()}, {"rank", m.rank()}, {"bases", std::move(bases)}};
}

inline Matroid matroid_from_json(const json& j, Matroid::Validate validate = Matroid::Validate::yes) {
  try {
    const int n = j.at("n").get<int>();
    const int r = j.at("rank").get<int>();
    std::vector<KSubset> bases;
    for (const auto& b : j.at("bases")) bases.emplace_back(n, b.get<std::vector<int>>());
    return Matroid(n, r, bases, validate);
  } catch (const json::exception& e) {
    throw ParameterError(std::string("malformed matroid JSON: ") + e.what());
  }
}

inline json to_json(const CountResult& c) {
  return {{"count", to_decimal(c.count)}, {"nodes", c.nodes_explored},
          {"elapsed_ms", static_cast<std::int64_t>(std::llround(c.elapsed_ms))}};
}

inline json to_json(const HyperplaneFamily& f) {
  return {{"large", to_json(f.large_members())}, {"rank_sized", to_json(f.rank_sized_members())}};
}

inline json to_json(const ConstructionRecord& rec) {
  return {{"provenance", to_string(rec.provenance)},
          {"family", to_json(rec.family)},
          {"matroid", to_json(rec.matroid)}};
}

/// Vertex index -> subset label sidecar for the plain-text adjacency export.
inline json labels_json(const VertexGraph& g) {
  json a = json::array();
  for (std::size_t i = 0; i < g.size(); ++i) a.push_back(g.has_labels() ? to_json(g.label(i)) : json(i));
  return {{"n_vertices", g.size()}, {"labels", std::move(a)}};
}

namespace detail {

inline std::string fixed6(const LogValue& v) {
  if (v.is_minus_infinity()) return "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", static_cast<double>(v.precise()));
  return buf;
}

inline std::string fixed6(long double v) { return fixed6(LogValue(v)); }

}  // namespace detail

inline const char* kBoundCsvHeader = "name,n,r,t,lhs_log2,rhs_log2,verdict";

inline std::string to_csv_row(const BoundCheck& c) {
  return c.name + "," + std::to_string(c.n) + "," + std::to_string(c.r) + "," + std::to_string(c.t) + "," +
         detail::fixed6(c.lhs_log2) + "," + detail::fixed6(c.rhs_log2) + "," + to_string(c.verdict);
}

inline json to_json(const BoundCheck& c) {
  json j = {{"name", c.name}, {"n", c.n}, {"r", c.r}, {"t", c.t}, {"params", c.params},
            {"lhs_log2", detail::fixed6(c.lhs_log2)}, {"rhs_log2", detail::fixed6(c.rhs_log2)},
            {"verdict", to_string(c.verdict)}, {"note", c.note}};
  j["lhs"] = c.lhs ? json(to_decimal(*c.lhs)) : json(nullptr);
  j["rhs"] = c.rhs ? json(to_decimal(*c.rhs)) : json(nullptr);
  return j;
}

inline const char* kRatioCsvHeader =
    "n,r,t,sp_nr,i_vh,vh_size,log2_ratio,neg_log2_binom_n_r1,certified_multiplier_log2,gs_punctured,"
    "gs_punctured_value,status";

inline std::string to_csv_row(const RatioRow& row) {
  const long double log_choices = log2_of(row.choices);
  std::string sp = "", ivh = "", ratio = "", certified = "";
  if (row.sp) {
    sp = to_decimal(*row.sp);
    certified = detail::fixed6(log_choices - row.delta.convert_to<long double>() * log2_of(*row.sp));
  }
  if (row.i_vh) ivh = to_decimal(*row.i_vh);
  if (row.complete()) ratio = detail::fixed6(log2_of(*row.i_vh) - log2_of(*row.sp));
  const long double gs = row.vh_size.convert_to<long double>() / static_cast<long double>(row.n);
  return std::to_string(row.n) + "," + std::to_string(row.r) + "," + std::to_string(row.t) + "," + sp + "," + ivh +
         "," + to_decimal(row.vh_size) + "," + ratio + "," + detail::fixed6(-log_choices) + "," + certified + "," +
         to_decimal(row.vh_size) + "/" + std::to_string(row.n) + "," + detail::fixed6(gs) + "," +
         (row.complete() ? "complete" : "incomplete");
}

}  // namespace pavecount
