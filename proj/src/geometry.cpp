#include "tangenttri/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tangenttri/constants.hpp"
#include "tangenttri/errors.hpp"

namespace tangenttri::geometry {
namespace {

constexpr double kGapSumTolerance = 1e-12;

void require_incircle(const GapTriple& g, const char* op) {
  validate(g);
  if (g.max() >= kPi) throw DomainError(std::string(op) + ": a gap of pi or more puts a vertex at infinity");
}

// Unit normal of the tangent line touching the circle at angle phi.
struct Normal {
  double c;
  double s;
};

Point2 intersect(Normal a, Normal b) {
  const double det = a.c * b.s - a.s * b.c;
  return {(b.s - a.s) / det, (a.c - b.c) / det};
}

double distance(Point2 p, Point2 q) { return std::hypot(p.x - q.x, p.y - q.y); }

}  // namespace

double GapTriple::max() const { return std::max({gamma1, gamma2, gamma3}); }

void validate(const GapTriple& g) {
  if (!(g.gamma1 > 0.0) || !(g.gamma2 > 0.0) || !(g.gamma3 > 0.0)) {
    throw DomainError("GapTriple: every gap must be positive");
  }
  if (std::abs(g.sum() - kTwoPi) > kGapSumTolerance) throw DomainError("GapTriple: gaps must sum to 2 pi");
}

GapTriple gaps_from_contacts(ContactAngles c) {
  if (!(c.alpha > 0.0 && c.alpha < kPi) || !(c.beta > 0.0 && c.beta < kPi)) {
    throw DomainError("gaps_from_contacts: alpha and beta must lie in (0, pi)");
  }
  return {kPi - c.alpha, kPi - c.beta, c.alpha + c.beta};
}

TangencyClass classify(const GapTriple& g) {
  validate(g);
  return g.max() < kPi ? TangencyClass::Incircle : TangencyClass::Excircle;
}

double tangent_length(double gamma) {
  if (!(gamma > 0.0 && gamma < kPi)) throw DomainError("tangent_length: gap must lie in (0, pi)");
  return std::tan(gamma / 2);
}

std::array<double, 3> side_lengths(const GapTriple& g) {
  require_incircle(g, "side_lengths");
  const double t1 = tangent_length(g.gamma1);
  const double t2 = tangent_length(g.gamma2);
  const double t3 = tangent_length(g.gamma3);
  return {t1 + t2, t1 + t3, t2 + t3};
}

std::array<double, 3> vertex_angles(const GapTriple& g) {
  require_incircle(g, "vertex_angles");
  return {kPi - g.gamma1, kPi - g.gamma2, kPi - g.gamma3};
}

bool is_acute(const GapTriple& g) {
  return g.gamma1 > kHalfPi && g.gamma2 > kHalfPi && g.gamma3 > kHalfPi;
}

CircumscribedTriangle triangle_from_contacts(ContactAngles c) {
  const GapTriple g = gaps_from_contacts(c);
  if (classify(g) == TangencyClass::Excircle) {
    throw DomainError("triangle_from_contacts: contacts lie on a semicircle (excircle configuration)");
  }
  if (g.max() > kPi - kDegenerateGapMargin) {
    throw DomainError("triangle_from_contacts: gap within 1e-9 of pi (near-degenerate triangle)");
  }

  const Normal n1{-1.0, 0.0};
  const Normal n2{std::cos(c.alpha), std::sin(c.alpha)};
  const Normal n3{std::cos(c.beta), -std::sin(c.beta)};
  const Point2 v12 = intersect(n1, n2);
  const Point2 v13 = intersect(n1, n3);
  const Point2 v23 = intersect(n2, n3);

  CircumscribedTriangle t{};
  t.vertices = {v12, v13, v23};
  t.sides = {distance(v12, v13), distance(v12, v23), distance(v13, v23)};
  t.angles = vertex_angles(g);
  t.perimeter = t.sides[0] + t.sides[1] + t.sides[2];
  t.area = std::abs((v13.x - v12.x) * (v23.y - v12.y) - (v23.x - v12.x) * (v13.y - v12.y)) / 2;
  t.contacts = c;
  return t;
}

std::array<double, 3> side_line_distances(const CircumscribedTriangle& t) {
  auto line_distance = [](Point2 p, Point2 q) {
    const double cross = p.x * q.y - p.y * q.x;
    return std::abs(cross) / distance(p, q);
  };
  const auto& v = t.vertices;
  return {line_distance(v[0], v[1]), line_distance(v[0], v[2]), line_distance(v[1], v[2])};
}

}  // namespace tangenttri::geometry
