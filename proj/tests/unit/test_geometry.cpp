#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "tangenttri/constants.hpp"
#include "tangenttri/errors.hpp"
#include "tangenttri/geometry.hpp"

namespace g = tangenttri::geometry;
using tangenttri::DomainError;
using tangenttri::kPi;

namespace {

double heron(const std::array<double, 3>& s) {
  // Kahan's ordering for numerical stability
  std::array<double, 3> v = s;
  std::sort(v.begin(), v.end(), std::greater<>());
  const double a = v[0], b = v[1], c = v[2];
  return 0.25 * std::sqrt((a + (b + c)) * (c - (a - b)) * (c + (a - b)) * (a + (b - c)));
}

std::vector<g::ContactAngles> moderate_contacts(int n) {
  std::mt19937_64 gen(2024);
  std::uniform_real_distribution<double> u(0.05, kPi - 0.05);
  std::vector<g::ContactAngles> out;
  while (static_cast<int>(out.size()) < n) {
    const g::ContactAngles c{u(gen), u(gen)};
    if (c.alpha + c.beta < kPi - 0.05) out.push_back(c);
  }
  return out;
}

}  // namespace

TEST(Gaps, SumToTwoPiAndClassify) {
  const auto gaps = g::gaps_from_contacts({1.0, 0.7});
  EXPECT_NEAR(gaps.sum(), 2 * kPi, 1e-15);
  EXPECT_DOUBLE_EQ(gaps.gamma1, kPi - 1.0);
  EXPECT_DOUBLE_EQ(gaps.gamma2, kPi - 0.7);
  EXPECT_DOUBLE_EQ(gaps.gamma3, 1.7);
  EXPECT_EQ(g::classify(gaps), g::TangencyClass::Incircle);
  EXPECT_EQ(g::classify(g::gaps_from_contacts({2.0, 1.5})), g::TangencyClass::Excircle);
}

TEST(Gaps, ValidateRejectsBadTriples) {
  EXPECT_NO_THROW(g::validate({2.0, 2.0, 2 * kPi - 4.0}));
  EXPECT_THROW(g::validate({2.0, 2.0, 2.0}), DomainError);
  EXPECT_THROW(g::validate({-0.1, kPi, kPi + 0.1}), DomainError);
  EXPECT_THROW(g::validate({0.0, kPi, kPi}), DomainError);
}

TEST(TangentLength, QuarterCircleGivesUnitLength) {
  EXPECT_NEAR(g::tangent_length(kPi / 2), 1.0, 1e-15);
  EXPECT_NEAR(g::tangent_length(2 * kPi / 3), std::sqrt(3.0), 1e-14);
}

TEST(Equilateral, SidesAnglesAndArea) {
  const double third = 2 * kPi / 3;
  const g::GapTriple gaps{third, third, third};
  for (const double s : g::side_lengths(gaps)) EXPECT_NEAR(s, 2 * std::sqrt(3.0), 1e-14);
  for (const double a : g::vertex_angles(gaps)) EXPECT_NEAR(a, kPi / 3, 1e-15);
  EXPECT_TRUE(g::is_acute(gaps));
  const auto t = g::triangle_from_contacts({kPi / 3, kPi / 3});
  EXPECT_NEAR(t.perimeter, 6 * std::sqrt(3.0), 1e-13);
  EXPECT_NEAR(t.area, 3 * std::sqrt(3.0), 1e-13);
}

TEST(Acute, RightTriangleIsNotAcute) {
  EXPECT_FALSE(g::is_acute({kPi / 2, 3 * kPi / 4, 3 * kPi / 4}));
  EXPECT_TRUE(g::is_acute({kPi / 2 + 0.01, 3 * kPi / 4, 3 * kPi / 4 - 0.01}));
}

TEST(Triangle, SidesMatchTangentLengthFormula) {
  for (const auto& c : moderate_contacts(2000)) {
    const auto t = g::triangle_from_contacts(c);
    const auto s = g::side_lengths(g::gaps_from_contacts(c));
    for (int i = 0; i < 3; ++i) EXPECT_NEAR(t.sides[i], s[i], 1e-12 * s[i]);
  }
}

TEST(Triangle, AreaEqualsSemiperimeterAndHeron) {
  for (const auto& c : moderate_contacts(2000)) {
    const auto t = g::triangle_from_contacts(c);
    EXPECT_NEAR(t.area, t.perimeter / 2, 1e-11 * t.area);
    EXPECT_NEAR(heron(t.sides), t.area, 1e-10 * t.area);
  }
}

TEST(Triangle, LawOfCosinesMatchesVertexAngles) {
  for (const auto& c : moderate_contacts(2000)) {
    const auto t = g::triangle_from_contacts(c);
    // The angle at V23 is opposite side 1, at V13 opposite side 2, at V12
    // opposite side 3.
    const auto& s = t.sides;
    auto angle_opposite = [](double a, double b, double c) {
      return std::acos(std::clamp((b * b + c * c - a * a) / (2 * b * c), -1.0, 1.0));
    };
    EXPECT_NEAR(angle_opposite(s[0], s[1], s[2]), t.angles[2], 1e-7);
    EXPECT_NEAR(angle_opposite(s[1], s[0], s[2]), t.angles[1], 1e-7);
    EXPECT_NEAR(angle_opposite(s[2], s[0], s[1]), t.angles[0], 1e-7);
    EXPECT_NEAR(t.angles[0] + t.angles[1] + t.angles[2], kPi, 1e-14);
  }
}

TEST(Triangle, VerticesSitAtTangentLengthFromContacts) {
  for (const auto& c : moderate_contacts(500)) {
    const auto t = g::triangle_from_contacts(c);
    const auto gaps = g::gaps_from_contacts(c);
    const g::Point2 p1{-1.0, 0.0};
    const g::Point2 p2{std::cos(c.alpha), std::sin(c.alpha)};
    const g::Point2 p3{std::cos(c.beta), -std::sin(c.beta)};
    auto dist = [](g::Point2 a, g::Point2 b) { return std::hypot(a.x - b.x, a.y - b.y); };
    const double t1 = g::tangent_length(gaps.gamma1);
    const double t2 = g::tangent_length(gaps.gamma2);
    const double t3 = g::tangent_length(gaps.gamma3);
    EXPECT_NEAR(dist(t.vertices[0], p1), t1, 1e-11 * t1);
    EXPECT_NEAR(dist(t.vertices[0], p2), t1, 1e-11 * t1);
    EXPECT_NEAR(dist(t.vertices[1], p1), t2, 1e-11 * t2);
    EXPECT_NEAR(dist(t.vertices[1], p3), t2, 1e-11 * t2);
    EXPECT_NEAR(dist(t.vertices[2], p2), t3, 1e-11 * t3);
    EXPECT_NEAR(dist(t.vertices[2], p3), t3, 1e-11 * t3);
  }
}

TEST(Triangle, InradiusIsOne) {
  for (const auto& c : moderate_contacts(2000)) {
    for (const double d : g::side_line_distances(g::triangle_from_contacts(c))) EXPECT_NEAR(d, 1.0, 1e-12);
  }
}

TEST(Triangle, TangentSumIdentityOnGrid) {
  // Half-gaps sum to pi, so tan x + tan y + tan z = tan x tan y tan z.
  for (int i = 1; i < 40; ++i) {
    for (int j = 1; i + j < 40; ++j) {
      const double alpha = kPi * i / 40;
      const double beta = kPi * j / 40;
      const auto gaps = g::gaps_from_contacts({alpha, beta});
      const double t1 = g::tangent_length(gaps.gamma1);
      const double t2 = g::tangent_length(gaps.gamma2);
      const double t3 = g::tangent_length(gaps.gamma3);
      const double sum = t1 + t2 + t3;
      EXPECT_NEAR(t1 * t2 * t3, sum, 1e-12 * sum * sum);
    }
  }
}

TEST(Triangle, RejectsExcircleAndDegenerate) {
  EXPECT_THROW(g::triangle_from_contacts({2.0, 1.5}), DomainError);
  EXPECT_THROW(g::triangle_from_contacts({1e-10, 1.0}), DomainError);
  EXPECT_THROW(g::triangle_from_contacts({1.0, kPi - 1.0 - 1e-10}), DomainError);
  EXPECT_NO_THROW(g::triangle_from_contacts({1e-6, 1.0}));
}

TEST(Gaps, WorkedValues) {
  auto g1 = g::gaps_from_contacts({kPi / 2, kPi / 4});
  EXPECT_NEAR(g1.gamma1, kPi / 2, 1e-15);
  EXPECT_NEAR(g1.gamma2, 3 * kPi / 4, 1e-15);
  EXPECT_NEAR(g1.gamma3, 3 * kPi / 4, 1e-15);
  auto g2 = g::gaps_from_contacts({0.9 * kPi, 0.2 * kPi});
  EXPECT_NEAR(g2.gamma3, 1.1 * kPi, 1e-15);
  EXPECT_EQ(g::classify(g2), g::TangencyClass::Excircle);
  EXPECT_EQ(g::classify({kPi / 2, kPi / 2, kPi}), g::TangencyClass::Excircle);
  EXPECT_FALSE(g::is_acute({0.4 * kPi, 0.8 * kPi, 0.8 * kPi}));
  const auto angles = g::vertex_angles({kPi / 2, 3 * kPi / 4, 3 * kPi / 4});
  EXPECT_NEAR(angles[0], kPi / 2, 1e-15);
  EXPECT_NEAR(angles[1], kPi / 4, 1e-15);
  EXPECT_NEAR(angles[2], kPi / 4, 1e-15);
}

TEST(Triangle, ExplicitVertices) {
  const auto right = g::triangle_from_contacts({kPi / 2, kPi / 4});
  EXPECT_NEAR(right.vertices[0].x, -1.0, 1e-15);
  EXPECT_NEAR(right.vertices[0].y, 1.0, 1e-15);
  const auto equilateral = g::triangle_from_contacts({kPi / 3, kPi / 3});
  for (const auto& v : equilateral.vertices) EXPECT_NEAR(std::hypot(v.x, v.y), 2.0, 1e-14);
}

TEST(Triangle, SideApproachesTwoWhenOtherTangentsNearlyParallel) {
  double previous = INFINITY;
  for (double eps : {1e-1, 1e-2, 1e-3, 1e-4}) {
    const auto s = g::side_lengths(g::gaps_from_contacts({kPi / 2, kPi / 2 - eps}));
    EXPECT_GT(s[0], 2.0);
    EXPECT_LT(s[0], previous);
    previous = s[0];
  }
  EXPECT_NEAR(previous, 2.0, 2e-4);
}
