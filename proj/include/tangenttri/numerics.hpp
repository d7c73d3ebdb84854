#pragma once

// Shared numerical kernels: adaptive Gauss-Kronrod quadrature on finite and
// semi-infinite intervals, Brent root finding, and Brent minimization in one
// and two variables.
//
// Everything here is templated on the floating type so the same code serves
// the double-precision API and the long double extended-precision paths.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "tangenttri/errors.hpp"

namespace tangenttri::numerics {

struct QuadratureSpec {
  double abs_tol = 1e-12;
  double rel_tol = 1e-12;
  int max_subdivisions = 2000;

  void validate() const {
    if (!(abs_tol > 0.0) || !(rel_tol > 0.0) || max_subdivisions < 1) {
      throw DomainError("QuadratureSpec: tolerances must be positive and max_subdivisions >= 1");
    }
  }
};

template <class Real = double>
struct IntegrationResult {
  Real value{};
  Real error_estimate{};
  int subdivisions_used = 0;
};

template <class Real = double>
struct RootResult {
  Real x{};
  Real fx{};
  Real bracket_width{};
  int iterations = 0;
};

template <class Real = double>
struct ScalarMinimum {
  Real x{};
  Real fx{};
};

struct Box {
  double x_lo, x_hi, y_lo, y_hi;
};

struct BivariateMinimum {
  double x{};
  double y{};
  double fxy{};
};

namespace detail {

// 15-point Kronrod rule on [-1, 1]. Odd entries of kKronrodNodes together with
// the centre are the nodes of the embedded 7-point Gauss rule.
inline constexpr long double kKronrodNodes[8] = {
    0.991455371120812639206854697526329L, 0.949107912342758524526189684047851L,
    0.864864423359769072789712788640926L, 0.741531185599394439863864773280788L,
    0.586087235467691130294144845693013L, 0.405845151377397166906606412076961L,
    0.207784955007898467600689403773245L, 0.000000000000000000000000000000000L,
};
inline constexpr long double kKronrodWeights[8] = {
    0.022935322010529224963732008058970L, 0.063092092629978553290700663189204L,
    0.104790010322250183839876322541518L, 0.140653259715525918745189590510238L,
    0.169004726639267902826583426598550L, 0.190350578064785409913256402421014L,
    0.204432940075298892414161999234649L, 0.209482141084727828012999174891714L,
};
inline constexpr long double kGaussWeights[4] = {
    0.129484966168869693270611432679082L, 0.279705391489276667901467771423780L,
    0.381830050505118944950369775488975L, 0.417959183673469387755102040816327L,
};

template <class Real>
Real epsilon() {
  return std::numeric_limits<Real>::epsilon();
}

template <class Real>
struct Segment {
  Real lo, hi, value, error;
};

template <class Real, class F>
Segment<Real> gauss_kronrod_15(F& f, Real lo, Real hi) {
  const Real center = (lo + hi) / 2;
  const Real half = (hi - lo) / 2;
  using std::abs;
  const Real fc = f(center);
  Real kronrod = fc * static_cast<Real>(kKronrodWeights[7]);
  Real gauss = fc * static_cast<Real>(kGaussWeights[3]);
  Real magnitude = abs(kronrod);
  for (int i = 0; i < 7; ++i) {
    const Real dx = half * static_cast<Real>(kKronrodNodes[i]);
    const Real f_left = f(center - dx);
    const Real f_right = f(center + dx);
    const Real pair = f_left + f_right;
    kronrod += static_cast<Real>(kKronrodWeights[i]) * pair;
    magnitude += static_cast<Real>(kKronrodWeights[i]) * (abs(f_left) + abs(f_right));
    if (i % 2 == 1) gauss += static_cast<Real>(kGaussWeights[i / 2]) * pair;
  }
  // The embedded difference can vanish exactly once the rules agree to
  // rounding; the estimate never claims better than one ulp of the integral
  // of |f|.
  const Real error = std::max(abs((kronrod - gauss) * half), epsilon<Real>() * magnitude * abs(half));
  return {lo, hi, kronrod * half, error};
}


}  // namespace detail

/// Globally adaptive quadrature: the segment with the largest embedded-pair
/// error is bisected until the summed error meets
/// max(abs_tol, rel_tol * |value|). Throws ConvergenceError carrying the best
/// estimate when the subdivision budget runs out or segments stop splitting.
template <class Real, class F>
IntegrationResult<Real> integrate_adaptive(F&& f, Real lo, Real hi, const QuadratureSpec& spec) {
  using std::abs;
  using std::isfinite;
  spec.validate();
  if (!(lo <= hi)) throw DomainError("integrate_adaptive: requires lo <= hi");
  if (lo == hi) return {Real(0), Real(0), 0};

  using Seg = detail::Segment<Real>;
  auto by_error = [](const Seg& a, const Seg& b) { return a.error < b.error; };
  std::vector<Seg> heap;
  heap.reserve(static_cast<std::size_t>(std::min(spec.max_subdivisions, 4096)));
  heap.push_back(detail::gauss_kronrod_15(f, lo, hi));
  Real total = heap.front().value;
  Real error = heap.front().error;

  auto tolerance = [&] {
    return std::max(static_cast<Real>(spec.abs_tol), static_cast<Real>(spec.rel_tol) * abs(total));
  };

  while (error > tolerance()) {
    if (!isfinite(total) || !isfinite(error)) {
      throw ConvergenceError("integrate_adaptive: non-finite integrand", static_cast<double>(total),
                             static_cast<double>(error));
    }
    if (static_cast<int>(heap.size()) >= spec.max_subdivisions) {
      throw ConvergenceError("integrate_adaptive: subdivision limit reached", static_cast<double>(total),
                             static_cast<double>(error));
    }
    std::pop_heap(heap.begin(), heap.end(), by_error);
    const Seg worst = heap.back();
    heap.pop_back();
    const Real mid = (worst.lo + worst.hi) / 2;
    if (!(worst.lo < mid && mid < worst.hi)) {
      throw ConvergenceError("integrate_adaptive: segment too narrow to bisect", static_cast<double>(total),
                             static_cast<double>(error));
    }
    const Seg left = detail::gauss_kronrod_15(f, worst.lo, mid);
    const Seg right = detail::gauss_kronrod_15(f, mid, worst.hi);
    total += (left.value + right.value) - worst.value;
    error += (left.error + right.error) - worst.error;
    heap.push_back(left);
    std::push_heap(heap.begin(), heap.end(), by_error);
    heap.push_back(right);
    std::push_heap(heap.begin(), heap.end(), by_error);
  }

  // Resum from the segment list; the running totals drift after many updates.
  if (heap.size() > 1) {
    std::sort(heap.begin(), heap.end(), [](const Seg& a, const Seg& b) { return a.lo < b.lo; });
    total = Real(0);
    error = Real(0);
    for (const Seg& s : heap) {
      total += s.value;
      error += s.error;
    }
  }
  return {total, error, static_cast<int>(heap.size())};
}

/// Integral over (lo, inf) using x = 1/u beyond max(lo, 1). The integrand
/// must decay at least like x^-2.
template <class Real, class F>
IntegrationResult<Real> integrate_semi_infinite(F&& f, Real lo, const QuadratureSpec& spec) {
  using std::isfinite;
  spec.validate();
  if (!isfinite(lo)) throw DomainError("integrate_semi_infinite: lower limit must be finite");
  auto tail = [&f](Real u) {
    const Real x = Real(1) / u;
    return (f(x) * x) * x;
  };
  if (lo >= Real(1)) return integrate_adaptive(tail, Real(0), Real(1) / lo, spec);

  const auto head = integrate_adaptive(f, lo, Real(1), spec);
  QuadratureSpec rest_spec = spec;
  rest_spec.max_subdivisions = spec.max_subdivisions - head.subdivisions_used;
  if (rest_spec.max_subdivisions < 1) {
    throw ConvergenceError("integrate_semi_infinite: subdivision limit reached", static_cast<double>(head.value),
                           static_cast<double>(head.error_estimate));
  }
  const auto rest = integrate_adaptive(tail, Real(0), Real(1), rest_spec);
  return {head.value + rest.value, head.error_estimate + rest.error_estimate,
          head.subdivisions_used + rest.subdivisions_used};
}

/// Brent's bracketing root finder. Stops when the bracket is narrower than
/// tol + 4 eps |x| or an exact zero is hit; the result lies in [lo, hi].
template <class Real, class F>
RootResult<Real> find_root_bracketed(F&& f, Real lo, Real hi, Real tol, int max_iterations = 300) {
  using std::abs;
  using std::isnan;
  if (!(tol > 0)) throw DomainError("find_root: tolerance must be positive");
  if (!(lo <= hi)) throw DomainError("find_root: requires lo <= hi");
  Real a = lo;
  Real b = hi;
  Real fa = f(a);
  Real fb = f(b);
  if (fa == 0) return {a, fa, Real(0), 0};
  if (fb == 0) return {b, fb, Real(0), 0};
  if (isnan(fa) || isnan(fb) || (fa > 0) == (fb > 0)) {
    throw DomainError("find_root: f(lo) and f(hi) must have opposite signs");
  }
  const Real eps = detail::epsilon<Real>();
  Real c = a;
  Real fc = fa;
  Real d = b - a;
  Real e = d;
  for (int iter = 1; iter <= max_iterations; ++iter) {
    if ((fb > 0) == (fc > 0)) {
      c = a;
      fc = fa;
      d = e = b - a;
    }
    if (abs(fc) < abs(fb)) {
      a = b;
      b = c;
      c = a;
      fa = fb;
      fb = fc;
      fc = fa;
    }
    const Real tol1 = 2 * eps * abs(b) + tol / 2;
    const Real xm = (c - b) / 2;
    if (abs(xm) <= tol1 || fb == 0) return {b, fb, abs(c - b), iter};

    if (abs(e) >= tol1 && abs(fa) > abs(fb)) {
      const Real s = fb / fa;
      Real p;
      Real q;
      if (a == c) {
        p = 2 * xm * s;
        q = 1 - s;
      } else {
        const Real qa = fa / fc;
        const Real r = fb / fc;
        p = s * (2 * xm * qa * (qa - r) - (b - a) * (r - 1));
        q = (qa - 1) * (r - 1) * (s - 1);
      }
      if (p > 0) {
        q = -q;
      } else {
        p = -p;
      }
      if (2 * p < std::min(3 * xm * q - abs(tol1 * q), abs(e * q))) {
        e = d;
        d = p / q;
      } else {
        d = xm;
        e = d;
      }
    } else {
      d = xm;
      e = d;
    }
    a = b;
    fa = fb;
    b += abs(d) > tol1 ? d : (xm > 0 ? tol1 : -tol1);
    fb = f(b);
  }
  throw ConvergenceError("find_root: iteration limit reached", static_cast<double>(b),
                         static_cast<double>(abs(c - b)));
}

template <class Real, class F>
Real find_root(F&& f, Real lo, Real hi, Real tol) {
  return find_root_bracketed(std::forward<F>(f), lo, hi, tol).x;
}

namespace detail {

template <class Real, class F>
ScalarMinimum<Real> brent_minimize(F& f, Real lo, Real hi, Real tol) {
  using std::abs;
  using std::isfinite;
  using std::sqrt;
  const Real golden = (3 - sqrt(Real(5))) / 2;
  const Real sqrt_eps = sqrt(epsilon<Real>());
  Real a = lo;
  Real b = hi;
  Real x = a + golden * (b - a);
  Real w = x;
  Real v = x;
  Real fx = f(x);
  Real fw = fx;
  Real fv = fx;
  Real d = 0;
  Real e = 0;
  for (int iter = 0; iter < 500; ++iter) {
    const Real xm = (a + b) / 2;
    const Real tol1 = sqrt_eps * abs(x) + tol / 3;
    const Real tol2 = 2 * tol1;
    if (abs(x - xm) <= tol2 - (b - a) / 2) break;

    bool parabolic = false;
    if (abs(e) > tol1 && isfinite(fx) && isfinite(fw) && isfinite(fv)) {
      Real r = (x - w) * (fx - fv);
      Real q = (x - v) * (fx - fw);
      Real p = (x - v) * q - (x - w) * r;
      q = 2 * (q - r);
      if (q > 0) {
        p = -p;
      } else {
        q = -q;
      }
      r = e;
      e = d;
      if (abs(p) < abs(q * r / 2) && p > q * (a - x) && p < q * (b - x)) {
        d = p / q;
        const Real u = x + d;
        if (u - a < tol2 || b - u < tol2) d = xm >= x ? tol1 : -tol1;
        parabolic = true;
      }
    }
    if (!parabolic) {
      e = x >= xm ? a - x : b - x;
      d = golden * e;
    }
    const Real u = x + (abs(d) >= tol1 ? d : (d > 0 ? tol1 : -tol1));
    const Real fu = f(u);
    if (fu <= fx) {
      if (u >= x) {
        a = x;
      } else {
        b = x;
      }
      v = w;
      fv = fw;
      w = x;
      fw = fx;
      x = u;
      fx = fu;
    } else {
      if (u < x) {
        a = u;
      } else {
        b = u;
      }
      if (fu <= fw || w == x) {
        v = w;
        fv = fw;
        w = u;
        fw = fu;
      } else if (fu <= fv || v == x || v == w) {
        v = u;
        fv = fu;
      }
    }
  }
  return {x, fx};
}

}  // namespace detail

/// Brent's parabolic/golden-section minimizer on [lo, hi]. Function values
/// alone pin the minimizer only to about sqrt(eps) relative, so when the
/// objective is smooth the estimate is refined by locating the sign change of
/// a central-difference derivative next to it. The refinement is dropped if
/// it does not bracket a sign change or would worsen the objective.
template <class Real, class F>
ScalarMinimum<Real> minimize_scalar(F&& f, Real lo, Real hi, Real tol) {
  using std::abs;
  using std::cbrt;
  using std::isfinite;
  using std::max;
  using std::sqrt;
  if (!(tol > 0)) throw DomainError("minimize_scalar: tolerance must be positive");
  if (!(lo < hi)) throw DomainError("minimize_scalar: requires lo < hi");
  ScalarMinimum<Real> best = detail::brent_minimize(f, lo, hi, tol);
  if (!isfinite(best.fx)) return best;

  const Real eps = detail::epsilon<Real>();
  const Real scale = max(Real(1), abs(best.x));
  const Real h = cbrt(eps) * scale;
  const Real window = 10 * (sqrt(eps) * scale + tol);
  const Real left = max(best.x - window, lo + h);
  const Real right = std::min(best.x + window, hi - h);
  if (!(left < right)) return best;
  auto slope = [&f, h](Real t) { return (f(t + h) - f(t - h)) / (2 * h); };
  const Real s_left = slope(left);
  const Real s_right = slope(right);
  if (!(s_left < 0 && s_right > 0)) return best;
  const Real refined = find_root_bracketed(slope, left, right, tol / 10).x;
  const Real f_refined = f(refined);
  if (f_refined <= best.fx + 64 * eps * max(Real(1), abs(best.fx))) return {refined, f_refined};
  return best;
}

/// Nested scalar minimization (outer over x of min over y) started from every
/// cell of a grid x grid partition of the box, followed by one re-run on a
/// box one cell wide around the best cell result. Non-finite objective values
/// are treated as infeasible.
template <class F>
BivariateMinimum minimize_bivariate(F&& f, const Box& box, double tol, int grid = 5) {
  if (!(tol > 0)) throw DomainError("minimize_bivariate: tolerance must be positive");
  if (!(box.x_lo < box.x_hi) || !(box.y_lo < box.y_hi)) throw DomainError("minimize_bivariate: empty box");
  if (grid < 1) throw DomainError("minimize_bivariate: grid must be >= 1");

  auto nested = [&f, tol](const Box& b) {
    auto profile = [&](double x) {
      return minimize_scalar([&](double y) { return f(x, y); }, b.y_lo, b.y_hi, tol).fx;
    };
    const auto outer = minimize_scalar(profile, b.x_lo, b.x_hi, tol);
    const auto inner = minimize_scalar([&](double y) { return f(outer.x, y); }, b.y_lo, b.y_hi, tol);
    return BivariateMinimum{outer.x, inner.x, inner.fx};
  };

  const double cell_w = (box.x_hi - box.x_lo) / grid;
  const double cell_h = (box.y_hi - box.y_lo) / grid;
  BivariateMinimum best{0.0, 0.0, std::numeric_limits<double>::infinity()};
  bool found = false;
  for (int i = 0; i < grid; ++i) {
    for (int j = 0; j < grid; ++j) {
      const Box cell{box.x_lo + i * cell_w, i + 1 == grid ? box.x_hi : box.x_lo + (i + 1) * cell_w,
                     box.y_lo + j * cell_h, j + 1 == grid ? box.y_hi : box.y_lo + (j + 1) * cell_h};
      const BivariateMinimum m = nested(cell);
      if (!found || m.fxy < best.fxy) {
        best = m;
        found = true;
      }
    }
  }
  if (!std::isfinite(best.fxy)) return best;

  const Box around{std::max(box.x_lo, best.x - cell_w), std::min(box.x_hi, best.x + cell_w),
                   std::max(box.y_lo, best.y - cell_h), std::min(box.y_hi, best.y + cell_h)};
  const BivariateMinimum polished = nested(around);
  if (polished.fxy <= best.fxy) return polished;
  return best;
}

}  // namespace tangenttri::numerics
