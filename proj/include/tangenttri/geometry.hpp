#pragma once

// Triangles whose three sides are tangent to the fixed unit circle.
//
// Contact points sit at circle angles pi (first tangent, the vertical line
// x = -1), alpha (second tangent, upper semicircle) and -beta (third tangent,
// lower semicircle). Throughout, the vertices, sides and gaps are labelled
// consistently:
//
//   gap gamma1 = pi - alpha   between contacts 1 and 2, vertex V12
//   gap gamma2 = pi - beta    between contacts 1 and 3, vertex V13
//   gap gamma3 = alpha + beta between contacts 2 and 3, vertex V23
//
//   side 1 lies on tangent 1 (V12-V13), side 2 on tangent 2 (V12-V23),
//   side 3 on tangent 3 (V13-V23).
//
// The interior angle at the vertex between two tangents with gap g is pi - g.

#include <array>

namespace tangenttri::geometry {

struct ContactAngles {
  double alpha;
  double beta;
};

struct GapTriple {
  double gamma1;
  double gamma2;
  double gamma3;

  double max() const;
  double sum() const { return gamma1 + gamma2 + gamma3; }
};

enum class TangencyClass { Incircle, Excircle };

struct Point2 {
  double x;
  double y;
};

struct CircumscribedTriangle {
  std::array<Point2, 3> vertices;  // V12, V13, V23
  std::array<double, 3> sides;     // on tangents 1, 2, 3
  std::array<double, 3> angles;    // at V12, V13, V23
  double perimeter;
  double area;
  ContactAngles contacts;
};

/// Gaps closer than this to pi are rejected by triangle construction.
inline constexpr double kDegenerateGapMargin = 1e-9;

/// Throws DomainError unless every gap is positive and they sum to 2 pi
/// within 1e-12.
void validate(const GapTriple& g);

GapTriple gaps_from_contacts(ContactAngles c);
TangencyClass classify(const GapTriple& g);

/// tan(gamma / 2): distance from the vertex between two tangents whose
/// contact points are gamma apart to either contact point.
double tangent_length(double gamma);

std::array<double, 3> side_lengths(const GapTriple& g);
std::array<double, 3> vertex_angles(const GapTriple& g);

/// Strictly acute: every gap exceeds pi/2. Right triangles are not acute.
bool is_acute(const GapTriple& g);

/// Builds the triangle by intersecting the tangent lines
/// x cos(phi) + y sin(phi) = 1 pairwise.
CircumscribedTriangle triangle_from_contacts(ContactAngles c);

/// Distance from the origin to the line through each side (1 for a true
/// circumscribed triangle), in side order.
std::array<double, 3> side_line_distances(const CircumscribedTriangle& t);

}  // namespace tangenttri::geometry
