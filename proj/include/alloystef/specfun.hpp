#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

// Error-function family for the solidification solvers.
//
// erf/erfc/erfcx use W. J. Cody's rational minimax approximations
// ("Rational Chebyshev approximation for the error function",
// Math. Comp. 23 (1969) 631-638; coefficients from netlib SPECFUN's
// CALERF). erfc is evaluated directly for |x| > 0.46875, never as
// 1 - erf(x), and erfcx(x) = exp(x^2) erfc(x) is produced by the same
// rational kernels without ever forming exp(x^2).

namespace alloystef::specfun {

inline constexpr double sqrt_pi = 1.7724538509055160273;
inline constexpr double inv_sqrt_pi = 0.56418958354775628695;

namespace detail {

// Coefficients, Cody 1969 / SPECFUN CALERF.
inline constexpr double erf_a[5] = {3.16112374387056560e0, 1.13864154151050156e2,
                                    3.77485237685302021e2, 3.20937758913846947e3,
                                    1.85777706184603153e-1};
inline constexpr double erf_b[4] = {2.36012909523441209e1, 2.44024637934444173e2,
                                    1.28261652607737228e3, 2.84423683343917062e3};
inline constexpr double erfc_c[9] = {5.64188496988670089e-1, 8.88314979438837594e0,
                                     6.61191906371416295e1,  2.98635138197400131e2,
                                     8.81952221241769090e2,  1.71204761263407058e3,
                                     2.05107837782607147e3,  1.23033935479799725e3,
                                     2.15311535474403846e-8};
inline constexpr double erfc_d[8] = {1.57449261107098347e1, 1.17693950891312499e2,
                                     5.37181101862009858e2, 1.62138957456669019e3,
                                     3.29079923573345963e3, 4.36261909014324716e3,
                                     3.43936767414372164e3, 1.23033935480374942e3};
inline constexpr double erfc_p[6] = {3.05326634961232344e-1, 3.60344899949804439e-1,
                                     1.25781726111229246e-1, 1.60837851487422766e-2,
                                     6.58749161529837803e-4, 1.63153871373020978e-2};
inline constexpr double erfc_q[5] = {2.56852019228982242e0, 1.87295284992346047e0,
                                     5.27905102951428412e-1, 6.05183413124413191e-2,
                                     2.33520497626869185e-3};

inline constexpr double thresh = 0.46875;
inline constexpr double xsmall = 1.11e-16;  // below this erf(x) = 2x/sqrt(pi)
inline constexpr double xbig = 26.543;      // erfc underflows beyond
inline constexpr double xhuge = 6.71e7;     // erfcx(x) = 1/(sqrt(pi) x) beyond

// erf(x) for |x| <= 0.46875.
inline double erf_small(double x) {
  double ysq = 0.0;
  if (std::fabs(x) > xsmall) ysq = x * x;
  double num = erf_a[4] * ysq;
  double den = ysq;
  for (int i = 0; i < 3; ++i) {
    num = (num + erf_a[i]) * ysq;
    den = (den + erf_b[i]) * ysq;
  }
  return x * (num + erf_a[3]) / (den + erf_b[3]);
}

// erfcx(y) = exp(y^2) erfc(y) for 0.46875 <= y <= 4.
inline double erfcx_mid(double y) {
  double num = erfc_c[8] * y;
  double den = y;
  for (int i = 0; i < 7; ++i) {
    num = (num + erfc_c[i]) * y;
    den = (den + erfc_d[i]) * y;
  }
  return (num + erfc_c[7]) / (den + erfc_d[7]);
}

// erfcx(y) for y > 4.
inline double erfcx_large(double y) {
  if (y >= xhuge) return inv_sqrt_pi / y;
  const double ysq = 1.0 / (y * y);
  double num = erfc_p[5] * ysq;
  double den = ysq;
  for (int i = 0; i < 4; ++i) {
    num = (num + erfc_p[i]) * ysq;
    den = (den + erfc_q[i]) * ysq;
  }
  double r = ysq * (num + erfc_p[4]) / (den + erfc_q[4]);
  return (inv_sqrt_pi - r) / y;
}

// exp(-y^2) evaluated with Cody's split: y is rounded to a multiple of
// 1/16 so that ysq*ysq is computed without rounding in the dominant part.
inline double exp_neg_sq(double y) {
  const double ysq = std::trunc(y * 16.0) / 16.0;
  const double del = (y - ysq) * (y + ysq);
  return std::exp(-ysq * ysq) * std::exp(-del);
}

inline void require_finite(double x, const char* fn) {
  if (!std::isfinite(x))
    throw std::domain_error(std::string(fn) + ": non-finite argument");
}

}  // namespace detail

// erf(x) = 2/sqrt(pi) * int_0^x exp(-t^2) dt, |result| < 1 for finite x.
inline double erf(double x) {
  detail::require_finite(x, "erf");
  const double y = std::fabs(x);
  if (y <= detail::thresh) return detail::erf_small(x);
  double erfc_y;
  if (y >= detail::xbig) {
    erfc_y = 0.0;
  } else if (y <= 4.0) {
    erfc_y = detail::exp_neg_sq(y) * detail::erfcx_mid(y);
  } else {
    erfc_y = detail::exp_neg_sq(y) * detail::erfcx_large(y);
  }
  const double result = 1.0 - erfc_y;
  return x < 0.0 ? -result : result;
}

// erfc(x) = 1 - erf(x), computed directly (no cancellation) for x > 0.46875.
inline double erfc(double x) {
  detail::require_finite(x, "erfc");
  const double y = std::fabs(x);
  double result;
  if (y <= detail::thresh) {
    result = 1.0 - detail::erf_small(y);
  } else if (y >= detail::xbig) {
    result = 0.0;
  } else if (y <= 4.0) {
    result = detail::exp_neg_sq(y) * detail::erfcx_mid(y);
  } else {
    result = detail::exp_neg_sq(y) * detail::erfcx_large(y);
  }
  return x < 0.0 ? 2.0 - result : result;
}

// erfcx(x) = exp(x^2) erfc(x), written F1 in the interface-function
// formulas; finite for all x >= 0.
inline double erfcx(double x) {
  detail::require_finite(x, "erfcx");
  if (x < 0.0) throw std::domain_error("erfcx: argument must be >= 0");
  if (x <= detail::thresh) {
    const double ysq = x > detail::xsmall ? x * x : 0.0;
    return std::exp(ysq) * (1.0 - detail::erf_small(x));
  }
  if (x <= 4.0) return detail::erfcx_mid(x);
  return detail::erfcx_large(x);
}

// Q(x) = sqrt(pi) x exp(x^2) erfc(x), increasing from 0 to 1 on [0, inf).
inline double q_of(double x) {
  detail::require_finite(x, "q_of");
  if (x < 0.0) throw std::domain_error("q_of: argument must be >= 0");
  return sqrt_pi * x * erfcx(x);
}

// Q1(x) = sqrt(pi) x exp(x^2) erf(x). Grows like exp(x^2): the domain is
// capped at 26 (exp(26^2) is the last power representable in double).
// Large-argument callers must use ratio forms (see the Rubinstein solver).
inline double q1_of(double x) {
  detail::require_finite(x, "q1_of");
  if (x < 0.0 || x > 26.0)
    throw std::domain_error("q1_of: argument must be in [0, 26]");
  return sqrt_pi * x * std::exp(x * x) * erf(x);
}

}  // namespace alloystef::specfun
