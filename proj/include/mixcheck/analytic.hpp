#pragma once

// Closed forms: upper bounds on E||M - I||_F^2 for the Householder
// construction, the structured determinant identities, the spectrum of
// the equal-components matrix, and the two-region case.

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "mixcheck/errors.hpp"
#include "mixcheck/rng_dist.hpp"

namespace mixcheck {

struct BoundResult {
  enum class Validity { Valid, PreconditionViolated };
  double value = std::numeric_limits<double>::infinity();
  int n = 0;
  Validity validity = Validity::PreconditionViolated;
  std::string reason;

  bool valid() const { return validity == Validity::Valid; }

  static BoundResult ok(int n, double v) { return {v, n, Validity::Valid, {}}; }
  static BoundResult violated(int n, std::string why) {
    return {std::numeric_limits<double>::infinity(), n, Validity::PreconditionViolated,
            std::move(why)};
  }
};

/// General bound for iid generators with finite 4th and 8th moments and
/// inverse moments:
///   16n/(n-1)^4 E(u^-8)E(u^8) + 16n/(n-1)^2 E(u^-4)E(u^4)
///     + 16n(n-1)/(n-2)^4 E(u^-8)E(u^4)^2
inline BoundResult bound_general(int n, const MomentSet& m) {
  if (n < 3) return BoundResult::violated(n, "requires n >= 3");
  if (!m.all_finite())
    return BoundResult::violated(n, "a required moment is infinite");
  const double dn = n;
  const double t1 = 16.0 * dn / std::pow(dn - 1.0, 4) * m.im8 * m.m8;
  const double t2 = 16.0 * dn / std::pow(dn - 1.0, 2) * m.im4 * m.m4;
  const double t3 = 16.0 * dn * (dn - 1.0) / std::pow(dn - 2.0, 4) * m.im8 * m.m4 * m.m4;
  return BoundResult::ok(n, t1 + t2 + t3);
}

/// Standard normal generators, n >= 11.
inline BoundResult bound_normal(int n) {
  if (n < 11) return BoundResult::violated(n, "requires n >= 11");
  const double d = n;
  const double t1 = 1680.0 * d / ((d - 3) * (d - 5) * (d - 7) * (d - 9));
  const double t2 = 48.0 * d / ((d - 3) * (d - 5));
  const double t3 = 144.0 * d * (d - 1) / ((d - 4) * (d - 6) * (d - 8) * (d - 10));
  return BoundResult::ok(n, t1 + t2 + t3);
}

/// Gamma(alpha, beta) generators with 8/alpha + 2 < n. The scale beta drops
/// out because v = u/|u| is scale invariant. Products are accumulated as
/// sums of logs.
inline BoundResult bound_gamma(int n, double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha))
    return BoundResult::violated(n, "requires alpha > 0");
  if (!(8.0 / alpha + 2.0 < n))
    return BoundResult::violated(n, "requires 8/alpha + 2 < n");
  const double d = n;
  auto log_rising = [alpha](int count) {
    double s = 0.0;
    for (int i = 0; i < count; ++i) s += std::log(alpha + i);
    return s;
  };
  auto log_falling = [](double base, int count) {
    double s = 0.0;
    for (int i = 1; i <= count; ++i) s += std::log(base - i);
    return s;
  };
  const double a1 = (d - 1.0) * alpha;
  const double a2 = (d - 2.0) * alpha;
  const double t1 = std::exp(std::log(16.0) + 5.0 * std::log(d) + log_rising(8) -
                             log_falling(a1, 8));
  const double t2 = std::exp(std::log(16.0) + 3.0 * std::log(d) + log_rising(4) -
                             log_falling(a1, 4));
  const double t3 = std::exp(std::log(16.0) + 5.0 * std::log(d) + std::log(d - 1.0) +
                             2.0 * log_rising(4) - log_falling(a2, 8));
  return BoundResult::ok(n, t1 + t2 + t3);
}

enum class StructuredKind { D, S };

/// D_n has `diag` on the diagonal and `off` elsewhere; S_n is D_n with its
/// first diagonal entry replaced by `off`.
///   det D_n = (diag - off)^(n-1) (diag + (n-1) off)
///   det S_n = (diag - off)^(n-1) off
inline double det_structured(double diag, double off, int n, StructuredKind kind) {
  if (n < 1) throw DomainError("det_structured requires n >= 1");
  if (kind == StructuredKind::S && n < 2)
    throw DomainError("det_structured: S_n requires n >= 2");
  const double base = std::pow(diag - off, n - 1);
  return kind == StructuredKind::D ? base * (diag + (n - 1) * off) : base * off;
}

struct EqualComponentsSpectrum {
  double det;
  double trace;
  std::vector<double> eigenvalues;  // 1 followed by (n-4)/n, n-1 times
};

inline EqualComponentsSpectrum equal_components_spectrum(int n) {
  if (n < 2) throw DomainError("equal_components_spectrum requires n >= 2");
  const double d = n;
  const double r = (d - 4.0) / d;
  EqualComponentsSpectrum s{std::pow(r, n - 1), (d - 2.0) * (d - 2.0) / d, {}};
  s.eigenvalues.assign(static_cast<std::size_t>(n), r);
  s.eigenvalues[0] = 1.0;
  return s;
}

/// Two regions, unit vector (v1, v2). Plus is the identity permutation,
/// Minus the swap.
enum class Branch { Plus, Minus };

struct TwoRegionCase {
  double v1;
  Branch branch;
};

inline double lambda2_two_region(const TwoRegionCase& c) {
  if (!(std::abs(c.v1) <= 1.0)) throw DomainError("two-region case requires |v1| <= 1");
  const double s = c.v1 * c.v1;
  const double plus = 8.0 * s * s - 8.0 * s + 1.0;
  return c.branch == Branch::Plus ? plus : -plus;
}

/// E(lambda2) when v1 ~ Beta(a, b).
inline double expected_lambda2_beta(double a, double b, Branch branch) {
  if (!(a > 0.0) || !(b > 0.0)) throw ParameterError("beta parameters must be positive");
  const double s = a + b;
  const double fourth = a * (a + 1) * (a + 2) * (a + 3) / (s * (s + 1) * (s + 2) * (s + 3));
  const double second = a * (a + 1) / (s * (s + 1));
  const double plus = 8.0 * fourth - 8.0 * second + 1.0;
  return branch == Branch::Plus ? plus : -plus;
}

}  // namespace mixcheck
