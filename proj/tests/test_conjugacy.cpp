#include <random>
#include <set>

#include "affweyl/conjugacy.hpp"
#include "catch_amalgamated.hpp"
#include "oracles.hpp"

using namespace affweyl;

namespace {
struct Setup {
  AffineWeyl w;
  Twist t;
};
Setup a2_id() {
  AffineWeyl w(build_root_datum("A2", "adjoint"));
  Twist t = identity_twist(w);
  return {std::move(w), std::move(t)};
}
Setup a2_swap() {
  AffineWeyl w(build_root_datum("A2", "adjoint"));
  Twist t = build_twist(w, {1, 0}, {2});
  return {std::move(w), std::move(t)};
}
Setup res_sl2() {
  AffineWeyl w(build_root_datum("A1xA1", "adjoint"));
  Twist t = build_twist(w, {1, 0}, {0, 0});
  return {std::move(w), std::move(t)};
}
}  // namespace

TEST_CASE("straightness basics") {
  auto [w, t] = a2_id();
  for (const auto& om : w.omega().rep) REQUIRE(is_straight(w, t, om));
  REQUIRE_FALSE(is_straight(w, t, w.simple_reflections()[0]));
  // dominant translations are straight
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<int> val(0, 3);
  for (int i = 0; i < 20; ++i) {
    IVec lam{val(rng), val(rng)};
    REQUIRE(is_straight(w, t, w.translation(lam)));
  }
}

TEST_CASE("straightness against the direct-product oracle up to 4n") {
  for (auto setup : {a2_id(), a2_swap(), res_sl2()}) {
    auto& w = setup.w;
    auto& t = setup.t;
    for (const auto& x : w.enumerate_by_length(3)) {
      TwistedPowers p = twisted_translation_power(w, t, x);
      auto prods = oracles::twisted_products(w, t, x, 4 * p.n);
      bool oracle_straight = true;
      for (int k = 1; k <= 4 * p.n; ++k)
        if (w.length(prods[k - 1]) != k * w.length(x)) oracle_straight = false;
      REQUIRE(is_straight(w, t, x) == oracle_straight);
    }
  }
}

TEST_CASE("reduction neighbors") {
  SECTION("identity lists every simple reflection under the identity twist") {
    auto [w, t] = a2_id();
    auto steps = reduction_neighbors(w, t, w.identity());
    REQUIRE(steps.size() == w.simple_reflections().size());
    for (const auto& st : steps) REQUIRE(st.length_delta == 0);
  }
  SECTION("s0 s1 s0 in affine A1 drops to s1 through s0") {
    AffineWeyl w(build_root_datum("A1", "simply_connected"));
    Twist t = identity_twist(w);
    AffineElement s1 = w.simple_reflections()[0], s0 = w.simple_reflections()[1];
    AffineElement x = w.mul(s0, s1, s0);
    REQUIRE(w.length(x) == 3);
    bool found = false;
    for (const auto& st : reduction_neighbors(w, t, x))
      if (st.s == 1 && st.target == s1 && st.length_delta == -2) found = true;
    REQUIRE(found);
  }
  SECTION("every step at a straight element preserves length") {
    for (auto setup : {a2_id(), a2_swap()}) {
      for (const auto& x : setup.w.enumerate_by_length(4)) {
        if (!is_straight(setup.w, setup.t, x)) continue;
        for (const auto& st : reduction_neighbors(setup.w, setup.t, x))
          REQUIRE(st.length_delta == 0);
      }
    }
  }
}

TEST_CASE("descent to minimal length") {
  SECTION("length-zero elements are fixed") {
    auto [w, t] = a2_swap();
    for (const auto& om : w.omega().rep) {
      DescentResult d = descend_to_min(w, t, om);
      REQUIRE(d.minimal == om);
      REQUIRE(d.chain.empty());
    }
  }
  SECTION("s0 s1 s0 descends to a length-one element") {
    AffineWeyl w(build_root_datum("A1", "simply_connected"));
    Twist t = identity_twist(w);
    AffineElement s1 = w.simple_reflections()[0], s0 = w.simple_reflections()[1];
    DescentResult d = descend_to_min(w, t, w.mul(s0, s1, s0));
    REQUIRE(w.length(d.minimal) == 1);
  }
  SECTION("minimum matches the orbit-level oracle and chains replay") {
    for (auto setup : {a2_id(), a2_swap(), res_sl2()}) {
      auto& w = setup.w;
      auto& t = setup.t;
      for (const auto& x : w.enumerate_by_length(4)) {
        DescentResult d = descend_to_min(w, t, x);
        REQUIRE(w.length(d.minimal) == oracles::class_min_length(w, t, x));
        AffineElement cur = x;
        for (const auto& st : d.chain) {
          REQUIRE(st.source == cur);
          REQUIRE(st.target == twisted_conjugate(w, t, w.simple_reflections()[st.s], cur));
          REQUIRE(w.length(st.target) <= w.length(st.source));
          cur = st.target;
        }
        REQUIRE(cur == d.minimal);
      }
    }
  }
}

TEST_CASE("approx connectivity") {
  SECTION("reflexive and one-step cases") {
    AffineWeyl w(build_root_datum("A1", "simply_connected"));
    Twist t = identity_twist(w);
    AffineElement x = w.translation({2});  // t^{alpha^vee}
    REQUIRE(approx_connected(w, t, x, x));
    AffineElement y = twisted_conjugate(w, t, w.simple_reflections()[0], x);
    REQUIRE(y == w.translation({-2}));
    REQUIRE(w.length(y) == w.length(x));
    REQUIRE(approx_connected(w, t, x, y));
  }
  SECTION("the diagonal length-zero elements are not connected under the factor swap") {
    auto [w, t] = res_sl2();
    AffineElement om_om = w.omega().rep[w.omega().pos_of(IVec{1, 1})];
    REQUIRE(w.length(om_om) == 0);
    REQUIRE_FALSE(approx_connected(w, t, w.identity(), om_om));
  }
  SECTION("length mismatch is rejected") {
    auto [w, t] = a2_id();
    REQUIRE_THROWS_AS(approx_connected(w, t, w.identity(), w.simple_reflections()[0]), error);
  }
}

TEST_CASE("minimal decomposition") {
  SECTION("length-zero elements decompose trivially") {
    auto [w, t] = a2_swap();
    for (const auto& om : w.omega().rep) {
      MinDecomposition d = min_decomposition(w, t, om);
      REQUIRE(d.j_set.empty());
      REQUIRE(d.x == om);
      REQUIRE(d.u == w.identity());
    }
  }
  SECTION("a finite simple reflection under the identity twist") {
    auto [w, t] = a2_id();
    AffineElement s1 = w.simple_reflections()[0];
    MinDecomposition d = min_decomposition(w, t, s1);
    REQUIRE(d.j_set == std::vector<int>{0});
    REQUIRE(d.x == w.identity());
    REQUIRE(d.u == s1);
  }
  SECTION("exhaustive validation on windows") {
    for (auto setup : {a2_id(), a2_swap(), res_sl2()}) {
      auto& w = setup.w;
      auto& t = setup.t;
      for (const auto& el : w.enumerate_by_length(4)) {
        MinDecomposition d = min_decomposition(w, t, el);
        REQUIRE(is_straight(w, t, d.x));
        // u lies in the parabolic generated by J
        auto wj = detail::parabolic_elements(w, d.j_set);
        REQUIRE(std::find(wj.begin(), wj.end(), d.u) != wj.end());
        // x theta(J) x^{-1} = J as sets of reflections
        for (int s : d.j_set) {
          AffineElement img =
              w.mul(w.mul(d.x, w.simple_reflections()[t.simple_perm[s]]), w.inv(d.x));
          bool in_j = false;
          for (int s2 : d.j_set)
            if (img == w.simple_reflections()[s2]) in_j = true;
          REQUIRE(in_j);
        }
        // x is minimal in its double coset from the left
        for (int s : d.j_set)
          REQUIRE(w.length(w.mul(w.simple_reflections()[s], d.x)) > w.length(d.x));
        // u*x attains the true minimal class length
        REQUIRE(w.length(w.mul(d.u, d.x)) == oracles::class_min_length(w, t, el));
      }
    }
  }
}

TEST_CASE("straight classes in windows") {
  SECTION("the six classes of A1-adjoint at bound four") {
    AffineWeyl w(build_root_datum("A1", "adjoint"));
    Twist t = identity_twist(w);
    StraightClasses sc = straight_classes_in_window(w, t, full_gamma(w, t), 4);
    REQUIRE(sc.violations.empty());
    REQUIRE(sc.records.size() == 6);
    std::set<std::pair<IVec, QVec>> got, want;
    for (const auto& r : sc.records) got.insert({r.invariant.kottwitz, r.invariant.newton});
    // (kappa, nu) with nu in coweight coordinates, pi^vee = (1):
    want.insert({{0}, {Rat(0)}});  // identity class
    want.insert({{1}, {Rat(0)}});  // the length-zero class
    want.insert({{1}, {Rat(1)}});  // t^{pi^vee}
    want.insert({{0}, {Rat(2)}});  // t^{alpha^vee}
    want.insert({{1}, {Rat(3)}});
    want.insert({{0}, {Rat(4)}});
    REQUIRE(got == want);
  }
  SECTION("simply connected A1 at bound zero has one class") {
    AffineWeyl w(build_root_datum("A1", "simply_connected"));
    Twist t = identity_twist(w);
    StraightClasses sc = straight_classes_in_window(w, t, full_gamma(w, t), 0);
    REQUIRE(sc.records.size() == 1);
    REQUIRE(sc.records[0].representative == w.identity());
  }
  SECTION("the diagonal length-zero elements separate under the trivial subgroup") {
    auto [w, t] = res_sl2();
    StraightClasses sc = straight_classes_in_window(w, t, trivial_gamma(w, t), 0);
    REQUIRE(sc.violations.empty());
    AffineElement om_om = w.omega().rep[w.omega().pos_of(IVec{1, 1})];
    int class_of_one = -1, class_of_omom = -1;
    for (const auto& r : sc.records)
      for (const auto& m : r.straight_members) {
        if (m == w.identity()) class_of_one = r.component_id;
        if (m == om_om) class_of_omom = r.component_id;
      }
    REQUIRE(class_of_one >= 0);
    REQUIRE(class_of_omom >= 0);
    REQUIRE(class_of_one != class_of_omom);
  }
}

TEST_CASE("straightness is a class invariant") {
  for (auto setup : {a2_id(), a2_swap()}) {
    auto& w = setup.w;
    auto& t = setup.t;
    auto win = w.enumerate_by_length(4);
    std::mt19937_64 rng(23);
    std::uniform_int_distribution<size_t> pick(0, win.size() - 1);
    for (const auto& x : win) {
      if (!is_straight(w, t, x)) continue;
      for (int i = 0; i < 10; ++i) {
        AffineElement y = twisted_conjugate(w, t, win[pick(rng)], x);
        if (w.length(y) == w.length(x)) REQUIRE(is_straight(w, t, y));
      }
    }
  }
}
