#pragma once

#include <set>
#include <string>
#include <vector>

#include "affweyl/conjugacy.hpp"

namespace affweyl {

struct VerificationReport {
  std::string check;
  long long bound = 0;
  long long elements = 0;
  long long classes = 0;
  bool pass = true;
  std::vector<std::string> counterexamples;
  std::vector<std::pair<std::string, long long>> counts;

  void fail(const std::string& why) {
    pass = false;
    counterexamples.push_back(why);
  }
};

// Classification of straight classes by the invariant map: injectivity is
// certified by translated connectivity, and every invariant value attained on
// the window is attained by a straight element. When the twist is trivial on
// Omega, the full and Gamma-trivial class counts must agree.
inline VerificationReport verify_classification(const AffineWeyl& w, const Twist& t,
                                                const GammaSubgroup& gamma, long long bound,
                                                const std::string& label = "Gamma",
                                                size_t max_elements = 2000000) {
  VerificationReport rep;
  rep.check = label;
  rep.bound = bound;

  StraightClasses classes = straight_classes_in_window(w, t, gamma, bound, max_elements);
  rep.elements = classes.window_elements;
  rep.classes = (long long)classes.records.size();
  for (const auto& v : classes.violations) rep.fail(v);
  rep.counts.push_back({"straight_elements", classes.straight_elements});

  // Section property: the invariant of any window element is hit by a straight one.
  CoinvariantGroup cg = make_coinvariants(w, t, gamma);
  std::set<ClassInvariant> straight_values;
  for (const auto& r : classes.records) straight_values.insert(r.invariant);
  for (const auto& x : w.enumerate_by_length(bound, max_elements)) {
    ClassInvariant v = pi(w, t, cg, x);
    if (!straight_values.count(v))
      rep.fail("invariant value " + v.str() + " of " + w.normal_form(x) +
               " is not attained by a straight element");
  }

  // Specializations always run alongside the requested subgroup.
  StraightClasses flat = straight_classes_in_window(w, t, trivial_gamma(w, t), bound, max_elements);
  StraightClasses full = straight_classes_in_window(w, t, full_gamma(w, t), bound, max_elements);
  for (const auto& v : flat.violations) rep.fail("[flat] " + v);
  for (const auto& v : full.violations) rep.fail("[full] " + v);
  rep.counts.push_back({"classes_gamma_trivial", (long long)flat.records.size()});
  rep.counts.push_back({"classes_gamma_full", (long long)full.records.size()});

  if (t.trivial_on_omega() && flat.records.size() != full.records.size())
    rep.fail("projection class counts differ although the twist is trivial on Omega");
  return rep;
}

// Bijectivity of the projection of straight W_a-classes onto straight W-classes
// when the twist acts trivially on Omega.
inline VerificationReport verify_projection_bijection(const AffineWeyl& w, const Twist& t,
                                                      long long bound,
                                                      size_t max_elements = 2000000) {
  VerificationReport rep;
  rep.check = "bij";
  rep.bound = bound;
  if (!t.trivial_on_omega()) throw error("projection bijection requires a twist acting trivially on Omega");

  GammaSubgroup none = trivial_gamma(w, t), all = full_gamma(w, t);
  StraightClasses flat = straight_classes_in_window(w, t, none, bound, max_elements);
  StraightClasses full = straight_classes_in_window(w, t, all, bound, max_elements);
  rep.elements = flat.window_elements;
  rep.classes = (long long)full.records.size();
  for (const auto& v : flat.violations) rep.fail(v);
  for (const auto& v : full.violations) rep.fail(v);

  CoinvariantGroup cg_full = make_coinvariants(w, t, all);
  std::set<ClassInvariant> images, targets;
  for (const auto& r : full.records) targets.insert(r.invariant);
  for (const auto& r : flat.records)
    images.insert({cg_full.ab.coords(r.invariant.kottwitz), r.invariant.newton});
  if (images != targets) rep.fail("projected class invariants do not match the full class invariants");
  if (images.size() != flat.records.size())
    rep.fail("projection identifies distinct straight W_a-classes");
  rep.counts.push_back({"classes_gamma_trivial", (long long)flat.records.size()});
  rep.counts.push_back({"classes_gamma_full", (long long)full.records.size()});
  return rep;
}

// Existence and validity of the minimal-length decomposition for every window element.
inline VerificationReport verify_min_decomposition(const AffineWeyl& w, const Twist& t,
                                                   long long bound,
                                                   size_t max_elements = 2000000) {
  VerificationReport rep;
  rep.check = "min1";
  rep.bound = bound;
  auto window = w.enumerate_by_length(bound, max_elements);
  rep.elements = (long long)window.size();
  long long ok = 0;
  for (const auto& el : window) {
    try {
      MinDecomposition dec = min_decomposition(w, t, el);
      AffineElement ux = w.mul(dec.u, dec.x);
      AffineElement cur = el;
      bool chain_ok = true;
      for (const auto& st : dec.chain) {
        if (st.source != cur || st.target != twisted_conjugate(w, t, w.simple_reflections()[st.s], cur) ||
            w.length(st.target) > w.length(st.source))
          chain_ok = false;
        cur = st.target;
      }
      if (!chain_ok || cur != ux) {
        rep.fail("invalid witness chain for " + w.normal_form(el));
        continue;
      }
      if (!is_straight(w, t, dec.x)) {
        rep.fail("non-straight decomposition kernel for " + w.normal_form(el));
        continue;
      }
      ++ok;
    } catch (const error& e) {
      rep.fail(std::string(e.what()));
    }
  }
  rep.counts.push_back({"decomposed", ok});
  return rep;
}

// Straight elements in one W_a-twisted class are connected by length-preserving steps.
inline VerificationReport verify_straight_connectivity(const AffineWeyl& w, const Twist& t,
                                                       long long bound,
                                                       size_t max_elements = 2000000) {
  VerificationReport rep;
  rep.check = "min2";
  rep.bound = bound;
  GammaSubgroup none = trivial_gamma(w, t);
  CoinvariantGroup cg = make_coinvariants(w, t, none);
  std::map<ClassInvariant, std::vector<AffineElement>> groups;
  auto window = w.enumerate_by_length(bound, max_elements);
  rep.elements = (long long)window.size();
  for (const auto& x : window)
    if (is_straight(w, t, x)) groups[pi(w, t, cg, x)].push_back(x);
  rep.classes = (long long)groups.size();
  long long pairs = 0;
  for (auto& [inv, members] : groups) {
    for (size_t i = 0; i + 1 < members.size(); ++i) {
      ++pairs;
      if (!approx_connected(w, t, members[i], members[i + 1]))
        rep.fail("straight elements in one W_a-class are not connected: " +
                 w.normal_form(members[i]) + " vs " + w.normal_form(members[i + 1]));
    }
  }
  rep.counts.push_back({"pairs_checked", pairs});
  return rep;
}

}  // namespace affweyl
