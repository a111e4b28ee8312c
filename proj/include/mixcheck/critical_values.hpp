#pragma once

// Monte Carlo distributions of the second eigenvalue of random
// Householder-derived unistochastic matrices, and the order-statistic
// critical values c1 and c2 extracted from them.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mixcheck/errors.hpp"
#include "mixcheck/matrices.hpp"
#include "mixcheck/parallel.hpp"
#include "mixcheck/rng_dist.hpp"
#include "mixcheck/spectra.hpp"

namespace mixcheck {

struct McConfig {
  int n = 3;              // partition count
  int samples = 1000;     // Monte Carlo sample size N
  DistributionSpec dist = DistributionSpec::normal();
  PermConstraint perm = PermConstraint::any();
  SeedSpec seed{};

  void validate() const {
    if (n < 3) throw ConfigError("Monte Carlo critical values require n >= 3");
    if (samples < 100) throw ConfigError("Monte Carlo sample size N must be >= 100");
    if (perm.kind == PermConstraint::Kind::MinCycles && perm.min_cycles > n)
      throw ParameterError("MinCycles(k) requires k <= n");
  }
};

// Error raised while producing one Monte Carlo draw.
class SampleError : public Error {
 public:
  SampleError(std::size_t index, const std::string& what)
      : Error("Monte Carlo sample " + std::to_string(index) + ": " + what),
        index_(index) {}
  std::size_t index() const { return index_; }

 private:
  std::size_t index_;
};

/// One draw of the construction: u iid from dist, v = u/|u|, H = I - 2vv^T,
/// Q from the constraint, M = (QH) squared entrywise. The generator vector
/// is drawn before Q from the same substream.
inline UnistochasticMatrix generate_unistochastic(int n, const DistributionSpec& dist,
                                                  const PermConstraint& perm,
                                                  const SeedSpec& seed) {
  auto rng = seed.engine();
  std::vector<double> u(static_cast<std::size_t>(n));
  for (auto& x : u) x = draw(dist, rng);
  const auto h = householder(to_unit_vector(u));
  const auto q = random_permutation(n, perm, rng);
  return unistochastic_from(q, h);
}

struct Lambda2Sample {
  std::vector<Complex> values;
  McConfig config;
};

/// Draw i uses substream config.seed.child(i), so the sample does not
/// depend on the thread count.
inline Lambda2Sample sample_lambda2(const McConfig& config,
                                    unsigned threads = default_thread_count()) {
  config.validate();
  Lambda2Sample out{std::vector<Complex>(static_cast<std::size_t>(config.samples)),
                    config};
  parallel_for(out.values.size(), threads, [&](std::size_t i) {
    try {
      const auto m = generate_unistochastic(config.n, config.dist, config.perm,
                                            config.seed.child(i));
      out.values[i] = second_eigenvalue(m.entries()).value;
    } catch (const SampleError&) {
      throw;
    } catch (const std::exception& e) {
      throw SampleError(i, e.what());
    }
  });
  return out;
}

struct C1Result {
  double c1;
  double achieved;   // #{d >= c1} / N
  bool ties;         // some distances coincide; achieved may exceed alpha
  bool degenerate;   // all distances identical
};

struct C2Result {
  double c2;
  double raw;        // order statistic before the 1 - c1 clamp
  double achieved;   // #{m <= c2} / N
  bool clamped;
  bool ties;
  bool degenerate;
};

namespace detail {

inline void check_alpha(double alpha, const char* name) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw ParameterError(std::string(name) + " must lie in (0, 1)");
}

// ceil/floor of alpha * N with a guard against products such as
// 0.95 * 5000 landing one ulp above an integer.
inline long long guarded_ceil(double x) { return static_cast<long long>(std::ceil(x - 1e-9)); }
inline long long guarded_floor(double x) { return static_cast<long long>(std::floor(x + 1e-9)); }

inline bool has_ties(const std::vector<double>& sorted) {
  return std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end();
}

}  // namespace detail

/// c1 is the j-th smallest of d_i = |lambda2_i - 1| with
/// j = min(N, ceil((1 - alpha1) N) + 1).
inline C1Result critical_value_c1(std::span<const Complex> sample, double alpha1) {
  detail::check_alpha(alpha1, "alpha1");
  if (sample.empty()) throw DomainError("critical_value_c1: empty sample");
  std::vector<double> d;
  d.reserve(sample.size());
  for (const auto& z : sample) d.push_back(std::abs(z - 1.0));
  std::sort(d.begin(), d.end());
  const auto n = static_cast<long long>(d.size());
  const long long j = std::min(n, detail::guarded_ceil((1.0 - alpha1) * n) + 1);
  const double c1 = d[static_cast<std::size_t>(j - 1)];
  const auto above = std::distance(std::lower_bound(d.begin(), d.end(), c1), d.end());
  return {c1, static_cast<double>(above) / static_cast<double>(n), detail::has_ties(d),
          d.front() == d.back()};
}

inline C1Result critical_value_c1(const Lambda2Sample& sample, double alpha1) {
  return critical_value_c1(std::span<const Complex>(sample.values), alpha1);
}

/// c2 is the k-th smallest of m_i = |lambda2_i| with k = max(1, floor(alpha2 N)),
/// clamped to 1 - c1 so the decision regions stay disjoint.
inline C2Result critical_value_c2(std::span<const Complex> sample, double alpha2,
                                  double c1) {
  detail::check_alpha(alpha2, "alpha2");
  if (!(c1 >= 0.0 && c1 <= 2.0)) throw ParameterError("c1 must lie in [0, 2]");
  if (sample.empty()) throw DomainError("critical_value_c2: empty sample");
  std::vector<double> m;
  m.reserve(sample.size());
  for (const auto& z : sample) m.push_back(std::abs(z));
  std::sort(m.begin(), m.end());
  const auto n = static_cast<long long>(m.size());
  const long long k = std::max(1LL, detail::guarded_floor(alpha2 * n));
  const double raw = m[static_cast<std::size_t>(std::min(k, n) - 1)];
  const double limit = std::max(0.0, 1.0 - c1);
  const bool clamped = raw > limit;
  const double c2 = clamped ? limit : raw;
  const auto below = std::distance(m.begin(), std::upper_bound(m.begin(), m.end(), c2));
  return {c2, raw, static_cast<double>(below) / static_cast<double>(n), clamped,
          detail::has_ties(m), m.front() == m.back()};
}

inline C2Result critical_value_c2(const Lambda2Sample& sample, double alpha2, double c1) {
  return critical_value_c2(std::span<const Complex>(sample.values), alpha2, c1);
}

enum class EcdfTransform { DistFromOne, Modulus };

struct EcdfPoint {
  double value;
  double cumulative;
};

/// Right-continuous empirical CDF: one point per distinct transformed value.
inline std::vector<EcdfPoint> ecdf(std::span<const Complex> sample, EcdfTransform transform) {
  if (sample.empty()) throw DomainError("ecdf: empty sample");
  std::vector<double> x;
  x.reserve(sample.size());
  for (const auto& z : sample)
    x.push_back(transform == EcdfTransform::Modulus ? std::abs(z) : std::abs(z - 1.0));
  std::sort(x.begin(), x.end());
  std::vector<EcdfPoint> out;
  const double n = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (i + 1 < x.size() && x[i + 1] == x[i]) continue;
    out.push_back({x[i], static_cast<double>(i + 1) / n});
  }
  return out;
}

inline std::vector<EcdfPoint> ecdf(const Lambda2Sample& sample, EcdfTransform transform) {
  return ecdf(std::span<const Complex>(sample.values), transform);
}

struct CriticalValues {
  double c1 = 0.0;
  double c2 = 0.0;
  double alpha1 = 0.05;
  double alpha2 = 0.05;
  double achieved1 = 0.0;
  double achieved2 = 0.0;
  bool clamped = false;
  bool ties1 = false;
  bool ties2 = false;
  bool degenerate1 = false;
  bool degenerate2 = false;
  McConfig null1;  // nonergodic-boundary sample, source of c1
  McConfig null2;  // weak-mixing-boundary sample, source of c2

  int n() const { return null1.n; }
};

struct CriticalValueRequest {
  int n = 3;
  int samples = 5000;
  DistributionSpec dist = DistributionSpec::normal();
  double alpha1 = 0.05;
  double alpha2 = 0.05;
  // The c1 sample needs Q with eigenvalue 1 of multiplicity >= 2. Identity
  // keeps lambda2 near 1; other such permutations also carry roots of unity
  // that compete for the largest modulus.
  PermConstraint perm1 = PermConstraint::identity();
  PermConstraint perm2 = PermConstraint::any();
  std::uint64_t seed = 0;
};

struct CriticalValueRun {
  CriticalValues values;
  Lambda2Sample sample1;
  Lambda2Sample sample2;
};

inline CriticalValueRun establish_critical_values(const CriticalValueRequest& req,
                                                  unsigned threads = default_thread_count()) {
  detail::check_alpha(req.alpha1, "alpha1");
  detail::check_alpha(req.alpha2, "alpha2");
  McConfig cfg1{req.n, req.samples, req.dist, req.perm1, SeedSpec{req.seed, 1}};
  McConfig cfg2{req.n, req.samples, req.dist, req.perm2, SeedSpec{req.seed, 2}};
  auto s1 = sample_lambda2(cfg1, threads);
  auto s2 = sample_lambda2(cfg2, threads);
  const auto r1 = critical_value_c1(s1, req.alpha1);
  const auto r2 = critical_value_c2(s2, req.alpha2, r1.c1);
  CriticalValues cv;
  cv.c1 = r1.c1;
  cv.c2 = r2.c2;
  cv.alpha1 = req.alpha1;
  cv.alpha2 = req.alpha2;
  cv.achieved1 = r1.achieved;
  cv.achieved2 = r2.achieved;
  cv.clamped = r2.clamped;
  cv.ties1 = r1.ties;
  cv.ties2 = r2.ties;
  cv.degenerate1 = r1.degenerate;
  cv.degenerate2 = r2.degenerate;
  cv.null1 = cfg1;
  cv.null2 = cfg2;
  return {cv, std::move(s1), std::move(s2)};
}

}  // namespace mixcheck
