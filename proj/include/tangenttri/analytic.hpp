#pragma once

// Exact side-length laws for tangent triangles of the unit circle.
//
//   SingleTangent        h = cot(theta/2), theta ~ U[0, pi]: one-sided Cauchy
//   NaiveConvolution     h + k for independent one-sided Cauchy h, k
//   IncircleConditioned  h + k with (alpha, beta) uniform on alpha + beta < pi
//
// CDFs are computed by adaptive quadrature of the densities after a smooth
// change of variables, quantiles by Brent root finding on the CDF.

#include <span>
#include <string_view>
#include <vector>

#include "tangenttri/numerics.hpp"

namespace tangenttri::analytic {

using numerics::QuadratureSpec;

enum class DensityModel { SingleTangent, NaiveConvolution, IncircleConditioned };

std::string_view model_name(DensityModel m);       // "single", "naive", "incircle"
DensityModel parse_model(std::string_view name);   // throws DomainError
double support_lower(DensityModel m);               // 0, 0, 2

struct IntegrationLimits {
  double a;
  double b;
};

double density_single(double h);
double density_naive(double l);
double density_bivariate_hk(double h, double k);

/// Roots of k^2 - l k + 1; b is formed directly and a = 1/b.
IntegrationLimits integration_limits(double l);

double f_term(double l);
double g_term(double l);

/// Zero outside (2, inf).
double density_incircle(double l);

/// Zero outside (0, pi).
double marginal_alpha(double alpha);

double density(DensityModel m, double x);

double cdf(DensityModel m, double x, const QuadratureSpec& spec = {});

/// CDF at every point of an ascending sequence, accumulated one increment at
/// a time. Much cheaper than independent cdf() calls for large samples.
std::vector<double> cdf_sorted(DensityModel m, std::span<const double> ascending, const QuadratureSpec& spec = {});

struct QuantileResult {
  double x;
  double residual;       // |cdf(x) - p|
  double bracket_width;  // width of the final root bracket
};

inline constexpr double kDefaultQuantileTol = 1e-13;

QuantileResult quantile_detailed(DensityModel m, double p, const QuadratureSpec& spec = {},
                                 double tol = kDefaultQuantileTol);
double quantile(DensityModel m, double p, const QuadratureSpec& spec = {}, double tol = kDefaultQuantileTol);

/// Integral of the constant (alpha, beta) density 2/pi^2 over the acute
/// region {alpha < pi/2, beta < pi/2, alpha + beta > pi/2}.
double acute_probability_exact(const QuadratureSpec& spec = {});

/// Median of the incircle-conditioned law in x87 extended precision
/// (64-bit significand), for checking digits beyond double precision.
long double median_incircle_extended();

}  // namespace tangenttri::analytic
