#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "affweyl/affweyl.hpp"

namespace {

using namespace affweyl;

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw error("cannot write " + out_path);
  out << text;
}

Instance load_instance(const std::string& config_path, long long bound_override,
                       long long max_elements_override) {
  RunConfig c = parse_config_text(slurp(config_path));
  if (bound_override >= 0) c.length_bound = bound_override;
  if (max_elements_override > 0) c.max_elements = (size_t)max_elements_override;
  return build_instance(c);
}

// Renders an affine subspace in coroot coordinates, e.g. "(1/3)a2^vee + Q a1^vee".
std::string pretty_subspace(const CorootSubspace& cs) {
  auto term = [](const Rat& c, int i) {
    std::string coef = c == Rat(1) ? "" : "(" + c.str() + ")";
    return coef + "a" + std::to_string(i + 1) + "^vee";
  };
  std::string s;
  for (size_t i = 0; i < cs.base.size(); ++i)
    if (!cs.base[i].is_zero()) {
      if (!s.empty()) s += " + ";
      s += term(cs.base[i], (int)i);
    }
  if (s.empty()) s = "0";
  for (const auto& dir : cs.dirs) {
    std::string d;
    for (size_t i = 0; i < dir.size(); ++i)
      if (!dir[i].is_zero()) {
        if (!d.empty()) d += "+";
        d += term(dir[i], (int)i);
      }
    s += " + Q " + d;
  }
  return s;
}

std::string reproduction_fixed_subspace(const std::string& title, const std::string& config_name) {
  Instance inst = build_instance(catalog_config(config_name));
  FixedApartment fa = fixed_apartment(inst.group, sigma_affine_action(inst.group, inst.twist));
  CorootSubspace cs = subspace_in_coroot_coords(inst.group, fa);
  std::string out = "example: " + title + "\n";
  out += "fixed_subspace_base_coroot: " + str(cs.base) + "\n";
  out += "fixed_subspace_direction_coroot: " + str(cs.dirs.at(0)) + "\n";
  out += "fixed_subspace: " + pretty_subspace(cs) + "\n";
  out += "special_point_e_coweight: " + str(fa.base_point) + "\n";
  return out;
}

std::string reproduction_res_sl2() {
  Instance inst = build_instance(catalog_config("a1a1-swap"));
  const AffineWeyl& w = inst.group;
  AffineElement one = w.identity();
  AffineElement om_om = w.omega().rep[w.omega().pos_of(IVec{1, 1})];
  CoinvariantGroup full = make_coinvariants(w, inst.twist, full_gamma(w, inst.twist));
  CoinvariantGroup flat = make_coinvariants(w, inst.twist, trivial_gamma(w, inst.twist));
  bool full_equal = pi(w, inst.twist, full, one) == pi(w, inst.twist, full, om_om);
  bool flat_distinct = pi(w, inst.twist, flat, one) != pi(w, inst.twist, flat, om_om);
  bool connected = approx_connected(w, inst.twist, one, om_om);
  std::string out = "example: resSL2\n";
  out += "elements: 1 and " + w.normal_form(om_om) + "\n";
  out += "pi_full_subgroup_equal: " + std::string(full_equal ? "yes" : "no") + "\n";
  out += "pi_trivial_subgroup_distinct: " + std::string(flat_distinct ? "yes" : "no") + "\n";
  out += "connected_by_length_preserving_steps: " + std::string(connected ? "yes" : "no") + "\n";
  out += std::string("verdict: ") +
         (full_equal && flat_distinct && !connected
              ? "one class under the full group, separate affine classes"
              : "unexpected") +
         "\n";
  return out;
}

int cmd_straight_classes(const std::string& config_path, long long bound, long long max_elements,
                         const std::string& format, const std::string& out_path) {
  Instance inst = load_instance(config_path, bound, max_elements);
  StraightClasses sc = straight_classes_in_window(inst.group, inst.twist, inst.gamma,
                                                  inst.config.length_bound,
                                                  inst.config.max_elements);
  if (!sc.violations.empty()) {
    for (const auto& v : sc.violations) std::cerr << "violation: " << v << "\n";
    return 2;
  }
  if (format == "json")
    emit(classes_to_json(inst.group, sc, inst.config.length_bound).dump(2) + "\n", out_path);
  else if (format == "tsv")
    emit(classes_to_tsv(inst.group, sc), out_path);
  else
    throw error("unsupported format for straight-classes: " + format);
  return 0;
}

int cmd_verify(const std::string& config_path, const std::string& theorem, long long bound,
               long long max_elements, const std::string& format, const std::string& out_path) {
  Instance inst = load_instance(config_path, bound, max_elements);
  const AffineWeyl& w = inst.group;
  long long bnd = inst.config.length_bound;
  size_t cap = inst.config.max_elements;
  VerificationReport rep;
  if (theorem == "gamma") {
    rep = verify_classification(w, inst.twist, full_gamma(w, inst.twist), bnd, "gamma", cap);
  } else if (theorem == "partial") {
    rep = verify_classification(w, inst.twist, trivial_gamma(w, inst.twist), bnd, "partial", cap);
  } else if (theorem == "Gamma") {
    rep = verify_classification(w, inst.twist, inst.gamma, bnd, "Gamma", cap);
  } else if (theorem == "min1") {
    rep = verify_min_decomposition(w, inst.twist, bnd, cap);
  } else if (theorem == "min2") {
    rep = verify_straight_connectivity(w, inst.twist, bnd, cap);
  } else if (theorem == "bij") {
    rep = verify_projection_bijection(w, inst.twist, bnd, cap);
  } else if (theorem == "length-add") {
    FixedSubgroupData f = build_fixed_subgroup(w, inst.twist, bnd);
    rep = verify_fixed_subgroup(w, f, bnd, cap);
  } else if (theorem == "inject") {
    FixedSubgroupData f = build_fixed_subgroup(w, inst.twist, bnd);
    GammaSubgroup gamma = inst.gamma;
    if (!inst.config.gamma_generators) {
      // default to the full relative length-zero subgroup
      std::vector<IVec> gens;
      for (const auto& om : f.rel_omega) gens.push_back(w.kappa(om));
      gamma = build_gamma(w, inst.twist, gens);
    }
    rep = map_i_and_verify(w, f, inst.twist, gamma, bnd, cap);
  } else {
    throw error("unknown theorem id: " + theorem);
  }
  if (format != "json") throw error("unsupported format for verify: " + format);
  emit(report_to_json(rep).dump(2) + "\n", out_path);
  return rep.pass ? 0 : 2;
}

int cmd_examples(const std::string& out_dir, const std::string& golden_dir) {
  const std::vector<std::pair<std::string, std::string>> repros = {
      {"examples_a2_swap.txt", reproduction_fixed_subspace("A2-swap", "a2-swap")},
      {"examples_b2_swap.txt", reproduction_fixed_subspace("B2-swap", "b2-swap")},
      {"examples_res_sl2.txt", reproduction_res_sl2()},
  };
  bool all_match = true;
  for (const auto& [name, text] : repros) {
    if (!out_dir.empty()) {
      std::filesystem::create_directories(out_dir);
      emit(text, (std::filesystem::path(out_dir) / name).string());
    } else {
      std::cout << text;
    }
    std::filesystem::path golden = std::filesystem::path(golden_dir) / name;
    if (!std::filesystem::exists(golden)) {
      std::cerr << "missing golden file: " << golden.string() << "\n";
      all_match = false;
      continue;
    }
    if (slurp(golden.string()) != text) {
      std::cerr << "golden mismatch: " << golden.string() << "\n";
      all_match = false;
    }
  }
  return all_match ? 0 : 2;
}

int cmd_figure(const std::string& config_path, long long bound, long long max_elements,
               const std::string& format, const std::string& out_path) {
  if (format != "svg") throw error("unsupported format for figure: " + format);
  Instance inst = load_instance(config_path, bound, max_elements);
  emit(render_figure(inst.group, inst.twist), out_path);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact computations in extended affine Weyl groups"};
  app.require_subcommand(1);

  std::string config_path, out_path, format = "json", theorem, golden_dir = "tests/golden",
              examples_out;
  long long bound = -1, max_elements = 0;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "config JSON path")->required();
    sub->add_option("--bound", bound, "length bound override");
    sub->add_option("--max-elements", max_elements, "enumeration cap override");
    sub->add_option("--out", out_path, "output path (default stdout)");
  };

  CLI::App* sc = app.add_subcommand("straight-classes", "tabulate straight classes in a window");
  add_common(sc);
  sc->add_option("--format", format, "json or tsv");

  CLI::App* vf = app.add_subcommand("verify", "run a window-level verifier");
  add_common(vf);
  vf->add_option("--theorem", theorem,
                 "one of: gamma, partial, Gamma, min1, min2, bij, length-add, inject")
      ->required();
  vf->add_option("--format", format, "json");

  CLI::App* ex = app.add_subcommand("examples", "emit the worked reproductions and diff goldens");
  ex->add_option("--out", examples_out, "directory for the emitted files");
  ex->add_option("--golden", golden_dir, "directory holding the golden files");

  CLI::App* fg = app.add_subcommand("figure", "emit a rank-two SVG picture");
  add_common(fg);
  std::string figure_format = "svg";
  fg->add_option("--format", figure_format, "svg");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    if (sc->parsed()) return cmd_straight_classes(config_path, bound, max_elements, format, out_path);
    if (vf->parsed()) return cmd_verify(config_path, theorem, bound, max_elements, format, out_path);
    if (ex->parsed()) return cmd_examples(examples_out, golden_dir);
    if (fg->parsed()) return cmd_figure(config_path, bound, max_elements, figure_format, out_path);
  } catch (const affweyl::error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
