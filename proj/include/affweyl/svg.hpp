#pragma once

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "affweyl/fixed_points.hpp"

namespace affweyl {

namespace detail {

struct Embed2 {
  // Isometric embedding of the rank-two cocharacter plane: u = L v with
  // L^T L the invariant Gram matrix.
  double l[2][2];

  static Embed2 from(const RootDatum& d) {
    IMat g = invariant_gram(d);
    Embed2 e;
    double a = (double)g(0, 0), b = (double)g(0, 1), c = (double)g(1, 1);
    e.l[0][0] = std::sqrt(a);
    e.l[0][1] = b / e.l[0][0];
    e.l[1][0] = 0.0;
    e.l[1][1] = std::sqrt(c - e.l[0][1] * e.l[0][1]);
    return e;
  }
  void map(double v0, double v1, double& x, double& y) const {
    x = l[0][0] * v0 + l[0][1] * v1;
    y = l[1][0] * v0 + l[1][1] * v1;
  }
  void map(const QVec& v, double& x, double& y) const {
    map(v[0].to_double(), v[1].to_double(), x, y);
  }
};

inline std::string fmt(double v) {
  char buf[32];
  if (v == 0.0) v = 0.0;  // normalize negative zero
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

inline std::string svg_line(double x1, double y1, double x2, double y2, const std::string& style) {
  return "  <line x1=\"" + fmt(x1) + "\" y1=\"" + fmt(-y1) + "\" x2=\"" + fmt(x2) + "\" y2=\"" +
         fmt(-y2) + "\" " + style + "/>\n";
}

}  // namespace detail

// A deterministic picture of a rank-two configuration: the hyperplane
// arrangement, the base alcove, the fixed line with its special point e,
// and the relative dominant half-line with its shifted and dominant images.
inline std::string render_figure(const AffineWeyl& w, const Twist& sigma) {
  if (w.rank() != 2) throw error("figure rendering needs a rank-two datum");
  const RootDatum& d = w.datum();
  detail::Embed2 em = detail::Embed2::from(d);
  AffineAction action = sigma_affine_action(w, sigma);
  FixedApartment fa = fixed_apartment(w, action);

  const double view = 3.2, scalepx = 90.0;
  auto px = [&](double x) { return x * scalepx; };

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"600\" height=\"600\" "
         "viewBox=\"-300 -300 600 600\">\n";
  svg += "  <rect x=\"-300\" y=\"-300\" width=\"600\" height=\"600\" fill=\"white\"/>\n";

  // Alcove.
  {
    auto verts = detail::alcove_vertices(w);
    std::string pts;
    // deterministic draw order: lexicographic in exact coordinates
    std::sort(verts.begin(), verts.end(), [](const QVec& a, const QVec& b) { return lex_less(a, b); });
    // order around the centroid for a sane polygon
    double cx = 0, cy = 0;
    std::vector<std::pair<double, double>> vv;
    for (const auto& v : verts) {
      double x, y;
      em.map(v, x, y);
      vv.push_back({x, y});
      cx += x;
      cy += y;
    }
    cx /= vv.size();
    cy /= vv.size();
    std::sort(vv.begin(), vv.end(), [&](auto& a, auto& b) {
      return std::atan2(a.second - cy, a.first - cx) < std::atan2(b.second - cy, b.first - cx);
    });
    for (auto& [x, y] : vv) {
      if (!pts.empty()) pts += " ";
      pts += detail::fmt(px(x)) + "," + detail::fmt(-px(y));
    }
    svg += "  <polygon points=\"" + pts + "\" fill=\"#cccccc\" stroke=\"none\"/>\n";
  }

  // Root hyperplane families at integer levels.
  for (const auto& pr : d.pos_roots) {
    // normal of <v, gamma> = m in embedded coordinates
    double g0 = (double)pr.root[0], g1 = (double)pr.root[1];
    // v = L^{-1} u  =>  functional u . (L^{-T} gamma), with L upper triangular
    double n0 = g0 / em.l[0][0];
    double n1 = (g1 - g0 * em.l[0][1] / em.l[0][0]) / em.l[1][1];
    double nn = n0 * n0 + n1 * n1;
    for (int m = -6; m <= 6; ++m) {
      double bx = m * n0 / nn, by = m * n1 / nn;
      double tx = -n1 / std::sqrt(nn), ty = n0 / std::sqrt(nn);
      double reach = view * 1.6;
      double x1 = bx - reach * tx, y1 = by - reach * ty;
      double x2 = bx + reach * tx, y2 = by + reach * ty;
      if (std::max(std::abs(bx), std::abs(by)) > view * 1.5) continue;
      svg += detail::svg_line(px(x1), px(y1), px(x2), px(y2),
                              "stroke=\"#999999\" stroke-width=\"1\"");
    }
  }

  double ex, ey;
  em.map(fa.base_point, ex, ey);

  if (fa.whole_space) {
    svg += "  <text x=\"-290\" y=\"-270\" font-size=\"14\">fixed locus: whole plane</text>\n";
  } else if (fa.directions.size() == 1) {
    double dx, dy;
    em.map(fa.directions[0], dx, dy);
    double dn = std::sqrt(dx * dx + dy * dy);
    dx /= dn;
    dy /= dn;
    double reach = view * 1.6;
    svg += detail::svg_line(px(ex - reach * dx), px(ey - reach * dy), px(ex + reach * dx),
                            px(ey + reach * dy), "stroke=\"black\" stroke-width=\"4\"");

    // relative dominant half-line from e (inward direction), its shift to the
    // origin, and the dominant representatives of that direction
    QVec inward = detail::alcove_barycenter(w) - fa.base_point;
    double ix, iy;
    em.map(inward, ix, iy);
    double in_ = std::sqrt(ix * ix + iy * iy);
    if (in_ > 1e-12) {
      ix /= in_;
      iy /= in_;
      svg += detail::svg_line(px(ex), px(ey), px(ex + reach * ix), px(ey + reach * iy),
                              "stroke=\"black\" stroke-width=\"4\" stroke-dasharray=\"1,0\"");
      svg += detail::svg_line(0, 0, px(reach * ix), px(reach * iy),
                              "stroke=\"black\" stroke-width=\"2\" stroke-dasharray=\"9,3,2,3\"");
      QVec dom = dominant_representative(d, inward).first;
      double ax, ay;
      em.map(dom, ax, ay);
      double an = std::sqrt(ax * ax + ay * ay);
      svg += detail::svg_line(0, 0, px(reach * ax / an), px(reach * ay / an),
                              "stroke=\"black\" stroke-width=\"3\" stroke-dasharray=\"2,4\"");
    }
    svg += "  <circle cx=\"" + detail::fmt(px(ex)) + "\" cy=\"" + detail::fmt(-px(ey)) +
           "\" r=\"6\" fill=\"#888888\"/>\n";
  }

  svg += "  <circle cx=\"0\" cy=\"0\" r=\"6\" fill=\"black\"/>\n";
  svg += "</svg>\n";
  return svg;
}

}  // namespace affweyl
