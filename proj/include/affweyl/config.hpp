#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "affweyl/twist.hpp"

namespace affweyl {

// A fully described run: group, twist and subgroup data plus bounds.
// The JSON schema is strict; unknown keys are rejected.
struct RunConfig {
  std::string cartan_type;
  std::string lattice = "simply_connected";
  std::optional<IMat> lattice_basis;
  std::vector<int> diagram_perm;  // empty = identity
  IVec omega;                     // canonical Omega coordinates of the omega part
  std::optional<std::vector<IVec>> gamma_generators;  // absent = full Omega
  long long length_bound = 6;
  size_t max_elements = 2000000;
};

inline RunConfig parse_config(const nlohmann::json& j) {
  RunConfig c;
  static const std::set<std::string> known{"cartan_type", "lattice", "twist", "gamma",
                                           "length_bound", "max_elements"};
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!known.count(it.key())) throw error("unknown config key: " + it.key());

  if (!j.contains("cartan_type") || !j["cartan_type"].is_string())
    throw error("config requires a string cartan_type");
  c.cartan_type = j["cartan_type"].get<std::string>();

  if (j.contains("lattice")) {
    const auto& l = j["lattice"];
    if (l.is_string()) {
      c.lattice = l.get<std::string>();
    } else if (l.is_object()) {
      for (auto it = l.begin(); it != l.end(); ++it)
        if (it.key() != "basis") throw error("unknown lattice key: " + it.key());
      auto rows = l.at("basis").get<std::vector<std::vector<long long>>>();
      IMat b((int)rows.size(), rows.empty() ? 0 : (int)rows[0].size());
      for (int i = 0; i < b.rows; ++i) {
        if ((int)rows[i].size() != b.cols) throw error("ragged lattice basis");
        for (int k = 0; k < b.cols; ++k) b(i, k) = rows[i][k];
      }
      c.lattice = "explicit";
      c.lattice_basis = b;
    } else {
      throw error("lattice must be a string or an object with a basis");
    }
  }

  if (j.contains("twist")) {
    const auto& t = j["twist"];
    for (auto it = t.begin(); it != t.end(); ++it)
      if (it.key() != "diagram_perm" && it.key() != "omega")
        throw error("unknown twist key: " + it.key());
    if (t.contains("diagram_perm")) c.diagram_perm = t["diagram_perm"].get<std::vector<int>>();
    if (t.contains("omega")) c.omega = t["omega"].get<IVec>();
  }

  if (j.contains("gamma")) {
    const auto& g = j["gamma"];
    for (auto it = g.begin(); it != g.end(); ++it)
      if (it.key() != "generators") throw error("unknown gamma key: " + it.key());
    c.gamma_generators = g.at("generators").get<std::vector<IVec>>();
  }

  if (j.contains("length_bound")) {
    c.length_bound = j["length_bound"].get<long long>();
    if (c.length_bound < 0) throw error("length_bound must be nonnegative");
  }
  if (j.contains("max_elements")) c.max_elements = j["max_elements"].get<size_t>();
  return c;
}

inline RunConfig parse_config_text(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw error(std::string("config is not valid JSON: ") + e.what());
  }
  try {
    return parse_config(j);
  } catch (const nlohmann::json::exception& e) {
    throw error(std::string("malformed config value: ") + e.what());
  }
}

struct Instance {
  AffineWeyl group;
  Twist twist;
  GammaSubgroup gamma;
  RunConfig config;
};

inline Instance build_instance(const RunConfig& c) {
  RootDatum d = build_root_datum(c.cartan_type, c.lattice,
                                 c.lattice_basis ? &*c.lattice_basis : nullptr);
  AffineWeyl w(std::move(d));
  std::vector<int> perm = c.diagram_perm;
  if (perm.empty())
    for (int i = 0; i < w.rank(); ++i) perm.push_back(i);
  IVec omega = c.omega;
  if (omega.empty()) omega.assign(w.omega().ab.nontrivial_factors().size(), 0);
  Twist t = build_twist(w, perm, omega);
  GammaSubgroup g = c.gamma_generators ? build_gamma(w, t, *c.gamma_generators)
                                       : full_gamma(w, t);
  return Instance{std::move(w), std::move(t), std::move(g), c};
}

// Named configurations exercised by the test drivers and golden files.
inline std::vector<std::pair<std::string, std::string>> catalog_configs() {
  return {
      {"a1-sc", R"({"cartan_type":"A1","lattice":"simply_connected","length_bound":6})"},
      {"a1-ad", R"({"cartan_type":"A1","lattice":"adjoint","length_bound":6})"},
      {"a1a1-swap",
       R"({"cartan_type":"A1xA1","lattice":"adjoint","twist":{"diagram_perm":[1,0],"omega":[0,0]},"length_bound":6})"},
      {"a2-sc", R"({"cartan_type":"A2","lattice":"simply_connected","length_bound":6})"},
      {"a2-ad", R"({"cartan_type":"A2","lattice":"adjoint","length_bound":6})"},
      {"a2-swap",
       R"({"cartan_type":"A2","lattice":"adjoint","twist":{"diagram_perm":[1,0],"omega":[2]},"length_bound":6})"},
      {"b2-sc", R"({"cartan_type":"B2","lattice":"simply_connected","length_bound":6})"},
      {"b2-ad", R"({"cartan_type":"B2","lattice":"adjoint","length_bound":6})"},
      {"b2-swap",
       R"({"cartan_type":"B2","lattice":"adjoint","twist":{"diagram_perm":[0,1],"omega":[1]},"length_bound":6})"},
      {"g2", R"({"cartan_type":"G2","lattice":"simply_connected","length_bound":4})"},
  };
}

inline RunConfig catalog_config(const std::string& name) {
  for (auto& [n, text] : catalog_configs())
    if (n == name) return parse_config_text(text);
  throw error("unknown catalog config: " + name);
}

}  // namespace affweyl
