#pragma once

// Extremal problems for triangles of unit inradius: least perimeter, least
// side, and least sum of two sides.
//
// The numerical searches run over two gap angles (gamma1, gamma2) with
// gamma3 = 2 pi - gamma1 - gamma2; all three must lie in (0, pi). For the
// two-side problem w is the side on the first tangent (t1 + t2) and u, v are
// the sides meeting at the apex vertex V23 (t1 + t3 and t2 + t3), so nothing
// forces the search towards an isosceles answer.

#include "tangenttri/geometry.hpp"

namespace tangenttri::optimize {

struct TwoSideOptimum {
  double w_star;
  double sum_uv;
  double apex_angle;  // radians
  double cos_apex;
  double abs_u_minus_v = 0.0;
  geometry::GapTriple gaps{};  // zero for the closed form
};

struct PerimeterOptimum {
  double perimeter;
  geometry::GapTriple gaps;
};

inline constexpr double kDefaultSearchTol = 1e-12;

double min_perimeter();
double side_infimum();

/// Equal side of the isosceles unit-inradius triangle with base w > 2.
double v_of_w(double w);

TwoSideOptimum two_side_min_closed();

/// u + v over the gap square; +inf where the gaps do not describe a
/// circumscribed triangle.
double two_side_objective(double gamma1, double gamma2);
double perimeter_objective(double gamma1, double gamma2);

TwoSideOptimum two_side_min_numeric(double tol = kDefaultSearchTol);
PerimeterOptimum min_perimeter_numeric(double tol = kDefaultSearchTol);

struct IsoscelesSearch {
  double w;
  double sum_uv;
};

/// One-variable search of 2 v_of_w(w) over w in [lo, hi].
IsoscelesSearch isosceles_two_side_search(double tol = kDefaultSearchTol, double lo = 2.1, double hi = 20.0);

double radians_to_degrees(double rad);

}  // namespace tangenttri::optimize
