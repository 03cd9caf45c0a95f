#pragma once

#include <string>

#include <json.hpp>

#include "affweyl/conjugacy.hpp"
#include "affweyl/verifiers.hpp"

namespace affweyl {

// Stable key order keeps report output byte-deterministic.
using ojson = nlohmann::ordered_json;

inline ojson report_to_json(const VerificationReport& rep) {
  ojson j;
  j["theorem"] = rep.check;
  j["bound"] = rep.bound;
  j["status"] = rep.pass ? "pass" : "fail";
  j["elements"] = rep.elements;
  j["classes"] = rep.classes;
  ojson counts = ojson::object();
  for (const auto& [k, v] : rep.counts) counts[k] = v;
  j["counts"] = counts;
  j["counterexamples"] = rep.counterexamples;
  return j;
}

inline std::string coords_str(const IVec& v) {
  std::string s = "(";
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(v[i]);
  }
  return s + ")";
}

// One row per straight class: representative, Kottwitz coordinates, exact
// dominant Newton point, and the number of straight window members.
inline ojson classes_to_json(const AffineWeyl& w, const StraightClasses& sc, long long bound) {
  ojson j;
  j["bound"] = bound;
  j["window_elements"] = sc.window_elements;
  j["straight_elements"] = sc.straight_elements;
  j["classes"] = ojson::array();
  for (const auto& r : sc.records) {
    ojson row;
    row["representative"] = w.normal_form(r.representative);
    row["kottwitz"] = r.invariant.kottwitz;
    ojson nu = ojson::array();
    for (const auto& c : r.invariant.newton) nu.push_back(c.str());
    row["newton"] = nu;
    row["size_in_window"] = (long long)r.straight_members.size();
    j["classes"].push_back(row);
  }
  return j;
}

inline std::string classes_to_tsv(const AffineWeyl& w, const StraightClasses& sc) {
  std::string out = "representative\tkottwitz\tnewton\tsize_in_window\n";
  for (const auto& r : sc.records) {
    out += w.normal_form(r.representative);
    out += "\t" + coords_str(r.invariant.kottwitz);
    out += "\t" + str(r.invariant.newton);
    out += "\t" + std::to_string(r.straight_members.size());
    out += "\n";
  }
  return out;
}

}  // namespace affweyl
