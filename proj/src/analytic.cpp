#include "tangenttri/analytic.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "tangenttri/constants.hpp"
#include "tangenttri/errors.hpp"

namespace tangenttri::analytic {
namespace {

constexpr double kInvPiSq = 1.0 / (std::numbers::pi * std::numbers::pi);

// Incircle density in the variable s with l = 2 cosh(s), times dl/ds.
// With this substitution sqrt(l^2 - 4) = 2 sinh(s), the root pair is
// (e^-s, e^s), f(l) = l atan(sinh s) and g(l) = 2 s, so nothing cancels near
// l = 2 and the integrand is smooth on [0, inf).
template <class Real>
Real incircle_s_integrand(Real s) {
  using std::atan;
  using std::cosh;
  using std::sinh;
  const Real pi = std::numbers::pi_v<Real>;
  const Real sh = sinh(s);
  const Real l = 2 * cosh(s);
  const Real f = l * atan(sh);
  const Real g = 2 * s;
  const Real dens = 16 * (f + g) / (pi * pi * (l * l + 4) * l);
  return dens * 2 * sh;
}

template <class Real>
Real incircle_s_of(Real x) {
  using std::acosh;
  return acosh(x / 2);
}

template <class Real>
Real incircle_cdf(Real x, const QuadratureSpec& spec) {
  if (!(x > 2)) return Real(0);
  auto integrand = [](Real s) { return incircle_s_integrand(s); };
  return numerics::integrate_adaptive(integrand, Real(0), incircle_s_of(x), spec).value;
}

// Single and naive laws: integrate in l on (0, 1] and in u = 1/l beyond.
double tail_integrand(DensityModel m, double u) {
  const double l = 1.0 / u;
  return (density(m, l) * l) * l;
}

double increment_open_support(DensityModel m, double x0, double x1, const QuadratureSpec& spec) {
  auto head = [m](double l) { return density(m, l); };
  auto tail = [m](double u) { return tail_integrand(m, u); };
  double total = 0.0;
  if (x0 < 1.0) total += numerics::integrate_adaptive(head, x0, std::min(x1, 1.0), spec).value;
  if (x1 > 1.0) {
    const double u_hi = x0 > 1.0 ? 1.0 / x0 : 1.0;
    total += numerics::integrate_adaptive(tail, 1.0 / x1, u_hi, spec).value;
  }
  return total;
}

double increment(DensityModel m, double x0, double x1, const QuadratureSpec& spec) {
  if (m == DensityModel::IncircleConditioned) {
    const double s0 = x0 > 2.0 ? incircle_s_of(x0) : 0.0;
    auto integrand = [](double s) { return incircle_s_integrand(s); };
    return numerics::integrate_adaptive(integrand, s0, incircle_s_of(x1), spec).value;
  }
  return increment_open_support(m, x0, x1, spec);
}

double clamp_probability(double p) { return std::min(1.0, std::max(0.0, p)); }

}  // namespace

std::string_view model_name(DensityModel m) {
  switch (m) {
    case DensityModel::SingleTangent:
      return "single";
    case DensityModel::NaiveConvolution:
      return "naive";
    case DensityModel::IncircleConditioned:
      return "incircle";
  }
  return "unknown";
}

DensityModel parse_model(std::string_view name) {
  if (name == "single") return DensityModel::SingleTangent;
  if (name == "naive") return DensityModel::NaiveConvolution;
  if (name == "incircle") return DensityModel::IncircleConditioned;
  throw DomainError("unknown density model '" + std::string(name) + "' (expected single, naive or incircle)");
}

double support_lower(DensityModel m) { return m == DensityModel::IncircleConditioned ? 2.0 : 0.0; }

double density_single(double h) {
  if (!(h > 0.0)) throw DomainError("density_single: h must be positive");
  return (2.0 / kPi) / (h * h + 1.0);
}

double density_naive(double l) {
  if (!(l > 0.0)) throw DomainError("density_naive: l must be positive");
  // (l atan l + ln(l^2 + 1)) / ((l^2 + 4) l), arranged to avoid overflow
  const double log_term = l <= 1.0 ? std::log1p(l * l) : 2.0 * std::log(l) + std::log1p(1.0 / (l * l));
  return 8.0 * kInvPiSq * ((std::atan(l) + log_term / l) / l) / (l + 4.0 / l);
}

double density_bivariate_hk(double h, double k) {
  if (!(h > 0.0) || !(k > 0.0)) throw DomainError("density_bivariate_hk: h and k must be positive");
  if (!(h * k > 1.0)) return 0.0;
  return 8.0 * kInvPiSq / ((h * h + 1.0) * (k * k + 1.0));
}

IntegrationLimits integration_limits(double l) {
  if (!(l > 2.0)) throw DomainError("integration_limits: l must exceed 2");
  const double root = std::sqrt(l - 2.0) * std::sqrt(l + 2.0);
  const double b = (l + root) / 2.0;
  return {1.0 / b, b};
}

double f_term(double l) {
  if (!(l > 2.0)) throw DomainError("f_term: l must exceed 2");
  // atan(b) - atan(a) = atan((b - a) / (1 + a b)) with a b = 1, b - a = sqrt(l^2 - 4)
  return l * std::atan(std::sqrt(l - 2.0) * std::sqrt(l + 2.0) / 2.0);
}

double g_term(double l) {
  if (!(l > 2.0)) throw DomainError("g_term: l must exceed 2");
  return 2.0 * std::acosh(l / 2.0);
}

double density_incircle(double l) {
  if (!(l > 2.0)) return 0.0;
  const double fg = f_term(l) + g_term(l);
  return 16.0 * kInvPiSq * ((fg / l) / l) / (l + 4.0 / l);
}

double marginal_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < kPi)) return 0.0;
  return 2.0 * (kPi - alpha) * kInvPiSq;
}

double density(DensityModel m, double x) {
  const double lower = support_lower(m);
  if (std::isnan(x)) return std::numeric_limits<double>::quiet_NaN();
  if (x < lower) return 0.0;
  switch (m) {
    case DensityModel::SingleTangent:
      return x == lower ? 2.0 / kPi : density_single(x);
    case DensityModel::NaiveConvolution:
      return x == lower ? 0.0 : density_naive(x);
    case DensityModel::IncircleConditioned:
      return density_incircle(x);
  }
  return 0.0;
}

double cdf(DensityModel m, double x, const QuadratureSpec& spec) {
  spec.validate();
  if (std::isnan(x)) throw DomainError("cdf: x is NaN");
  if (x == std::numeric_limits<double>::infinity()) return 1.0;
  const double lower = support_lower(m);
  if (!(x > lower)) return 0.0;
  if (m == DensityModel::IncircleConditioned) return clamp_probability(incircle_cdf(x, spec));
  return clamp_probability(increment_open_support(m, lower, x, spec));
}

std::vector<double> cdf_sorted(DensityModel m, std::span<const double> ascending, const QuadratureSpec& spec) {
  spec.validate();
  std::vector<double> out;
  out.reserve(ascending.size());
  const double lower = support_lower(m);
  double previous_x = lower;
  double accumulated = 0.0;
  for (const double x : ascending) {
    if (std::isnan(x) || (x < previous_x && x > lower)) throw DomainError("cdf_sorted: input must be ascending");
    if (x > lower) {
      if (x > previous_x) accumulated += increment(m, previous_x, x, spec);
      previous_x = x;
      out.push_back(clamp_probability(accumulated));
    } else {
      out.push_back(0.0);
    }
  }
  return out;
}

QuantileResult quantile_detailed(DensityModel m, double p, const QuadratureSpec& spec, double tol) {
  spec.validate();
  if (!(p > 0.0 && p < 1.0)) throw DomainError("quantile: p must lie in (0, 1)");
  if (!(tol > 0.0)) throw DomainError("quantile: tolerance must be positive");
  // An exact zero of the rounded CDF difference is not a certificate, so it
  // counts as positive and the bracket keeps shrinking to tol.
  auto excess = [&](double x) {
    const double v = cdf(m, x, spec) - p;
    return v == 0.0 ? std::numeric_limits<double>::denorm_min() : v;
  };

  double lo = support_lower(m);
  double hi = lo + 1.0;
  double f_hi = excess(hi);
  while (f_hi < 0.0) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e300) {
      throw ConvergenceError("quantile: bracket expansion failed (p too close to 1)", lo, std::abs(f_hi));
    }
    f_hi = excess(hi);
  }
  const auto root = numerics::find_root_bracketed(excess, lo, hi, tol);
  return {root.x, std::abs(cdf(m, root.x, spec) - p), root.bracket_width};
}

double quantile(DensityModel m, double p, const QuadratureSpec& spec, double tol) {
  return quantile_detailed(m, p, spec, tol).x;
}

double acute_probability_exact(const QuadratureSpec& spec) {
  spec.validate();
  const double joint = 2.0 * kInvPiSq;
  auto inner = [&](double alpha) {
    auto constant = [joint](double) { return joint; };
    return numerics::integrate_adaptive(constant, kHalfPi - alpha, kHalfPi, spec).value;
  };
  return numerics::integrate_adaptive(inner, 0.0, kHalfPi, spec).value;
}

long double median_incircle_extended() {
  QuadratureSpec spec;
  spec.abs_tol = 1e-19;
  spec.rel_tol = 1e-19;
  spec.max_subdivisions = 4000;
  auto excess = [&](long double x) { return incircle_cdf(x, spec) - 0.5L; };
  return numerics::find_root(excess, 5.0L, 6.0L, 1e-19L);
}

}  // namespace tangenttri::analytic
