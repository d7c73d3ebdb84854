#include "tangenttri/optimize.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "tangenttri/constants.hpp"
#include "tangenttri/errors.hpp"
#include "tangenttri/numerics.hpp"

namespace tangenttri::optimize {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// Keeps the search box inside the open gap square.
constexpr double kBoxMargin = 1e-6;

struct TangentLengths {
  double t1, t2, t3;
};

bool feasible_lengths(double gamma1, double gamma2, TangentLengths& t) {
  const double gamma3 = kTwoPi - gamma1 - gamma2;
  if (!(gamma1 > 0.0 && gamma1 < kPi && gamma2 > 0.0 && gamma2 < kPi && gamma3 > 0.0 && gamma3 < kPi)) {
    return false;
  }
  t = {std::tan(gamma1 / 2), std::tan(gamma2 / 2), std::tan(gamma3 / 2)};
  return true;
}

numerics::Box gap_box() { return {kBoxMargin, kPi - kBoxMargin, kBoxMargin, kPi - kBoxMargin}; }

}  // namespace

double min_perimeter() { return 6.0 * std::numbers::sqrt3; }

double side_infimum() { return 2.0; }

double v_of_w(double w) {
  if (!(w > 2.0)) throw DomainError("v_of_w: base must exceed 2 for unit inradius");
  return (w * w + 4.0) * w / (2.0 * (w * w - 4.0));
}

TwoSideOptimum two_side_min_closed() {
  const double sqrt5 = std::sqrt(5.0);
  TwoSideOptimum o{};
  o.w_star = std::sqrt(8.0 + 4.0 * sqrt5);
  o.sum_uv = std::sqrt(22.0 + 10.0 * sqrt5);
  o.cos_apex = sqrt5 - 2.0;
  o.apex_angle = std::acos(o.cos_apex);
  return o;
}

double two_side_objective(double gamma1, double gamma2) {
  TangentLengths t{};
  if (!feasible_lengths(gamma1, gamma2, t)) return kInf;
  return (t.t1 + t.t3) + (t.t2 + t.t3);
}

double perimeter_objective(double gamma1, double gamma2) {
  TangentLengths t{};
  if (!feasible_lengths(gamma1, gamma2, t)) return kInf;
  return 2.0 * (t.t1 + t.t2 + t.t3);
}

TwoSideOptimum two_side_min_numeric(double tol) {
  const auto m = numerics::minimize_bivariate(two_side_objective, gap_box(), tol);
  const geometry::GapTriple g{m.x, m.y, kTwoPi - m.x - m.y};
  const auto sides = geometry::side_lengths(g);  // w, u, v
  TwoSideOptimum o{};
  o.w_star = sides[0];
  o.sum_uv = sides[1] + sides[2];
  o.abs_u_minus_v = std::abs(sides[1] - sides[2]);
  o.apex_angle = kPi - g.gamma3;
  o.cos_apex = std::cos(o.apex_angle);
  o.gaps = g;
  return o;
}

PerimeterOptimum min_perimeter_numeric(double tol) {
  const auto m = numerics::minimize_bivariate(perimeter_objective, gap_box(), tol);
  return {m.fxy, geometry::GapTriple{m.x, m.y, kTwoPi - m.x - m.y}};
}

IsoscelesSearch isosceles_two_side_search(double tol, double lo, double hi) {
  if (!(lo > 2.0)) throw DomainError("isosceles_two_side_search: lower bound must exceed 2");
  const auto m = numerics::minimize_scalar([](double w) { return 2.0 * v_of_w(w); }, lo, hi, tol);
  return {m.x, m.fx};
}

double radians_to_degrees(double rad) { return rad * 180.0 / std::numbers::pi; }

}  // namespace tangenttri::optimize
