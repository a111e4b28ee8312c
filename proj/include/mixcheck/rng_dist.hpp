#pragma once

// Random-variable specifications for the Householder generator vectors,
// seeded i.i.d. sampling and the moment bookkeeping used by the
// Frobenius-norm bounds.

#include <charconv>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <type_traits>
#include <variant>
#include <vector>

#include "mixcheck/errors.hpp"

namespace mixcheck {

struct StandardNormal {};
struct GammaDist {
  double shape;
  double scale;
};
struct BetaDist {
  double alpha;
  double beta;
};
// Uniform on [lower, upper); exact zeros are rejected and redrawn.
struct UniformDist {
  double lower;
  double upper;
};
struct ConstantDist {
  double value;
};

class DistributionSpec {
 public:
  using Kind = std::variant<StandardNormal, GammaDist, BetaDist, UniformDist,
                            ConstantDist>;

  DistributionSpec(Kind kind) : kind_(kind) { validate(); }  // NOLINT

  static DistributionSpec normal() { return {StandardNormal{}}; }
  static DistributionSpec gamma(double shape, double scale) {
    return {GammaDist{shape, scale}};
  }
  static DistributionSpec beta(double a, double b) { return {BetaDist{a, b}}; }
  static DistributionSpec uniform(double a, double b) {
    return {UniformDist{a, b}};
  }
  static DistributionSpec constant(double c) { return {ConstantDist{c}}; }

  const Kind& kind() const { return kind_; }

  // Canonical text form; round-trips through parse_distribution.
  std::string to_string() const;

 private:
  void validate() const;
  Kind kind_;
};

namespace detail {

inline std::string format_double(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, ptr);
}

inline double parse_double(std::string_view text, std::string_view what) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    throw ParseError("cannot parse " + std::string(what) + " from '" +
                     std::string(text) + "'");
  }
  return value;
}

// splitmix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace detail

inline void DistributionSpec::validate() const {
  std::visit(
      [](const auto& k) {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, GammaDist>) {
          if (!(k.shape > 0.0) || !(k.scale > 0.0) || !std::isfinite(k.shape) ||
              !std::isfinite(k.scale))
            throw ParameterError("gamma requires shape > 0 and scale > 0");
        } else if constexpr (std::is_same_v<T, BetaDist>) {
          if (!(k.alpha > 0.0) || !(k.beta > 0.0) || !std::isfinite(k.alpha) ||
              !std::isfinite(k.beta))
            throw ParameterError("beta requires alpha > 0 and beta > 0");
        } else if constexpr (std::is_same_v<T, UniformDist>) {
          if (!(k.lower < k.upper) || !std::isfinite(k.lower) ||
              !std::isfinite(k.upper))
            throw ParameterError("uniform requires finite a < b");
        } else if constexpr (std::is_same_v<T, ConstantDist>) {
          if (k.value == 0.0 || !std::isfinite(k.value))
            throw ParameterError("constant distribution requires c != 0");
        }
      },
      kind_);
}

inline std::string DistributionSpec::to_string() const {
  using detail::format_double;
  return std::visit(
      [](const auto& k) -> std::string {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, StandardNormal>) {
          return "normal";
        } else if constexpr (std::is_same_v<T, GammaDist>) {
          return "gamma:" + format_double(k.shape) + "," + format_double(k.scale);
        } else if constexpr (std::is_same_v<T, BetaDist>) {
          return "beta:" + format_double(k.alpha) + "," + format_double(k.beta);
        } else if constexpr (std::is_same_v<T, UniformDist>) {
          return "uniform:" + format_double(k.lower) + "," +
                 format_double(k.upper);
        } else {
          return "const:" + format_double(k.value);
        }
      },
      kind_);
}

// Grammar: normal | gamma:ALPHA,BETA | beta:ALPHA,BETA | uniform:A,B | const:C
inline DistributionSpec parse_distribution(std::string_view text) {
  if (text == "normal") return DistributionSpec::normal();
  const auto colon = text.find(':');
  if (colon == std::string_view::npos)
    throw ParseError("unknown distribution '" + std::string(text) + "'");
  const auto name = text.substr(0, colon);
  const auto args = text.substr(colon + 1);
  if (name == "const") {
    return DistributionSpec::constant(detail::parse_double(args, "constant"));
  }
  const auto comma = args.find(',');
  if (comma == std::string_view::npos)
    throw ParseError("distribution '" + std::string(name) +
                     "' takes two comma-separated parameters");
  const double a = detail::parse_double(args.substr(0, comma), "parameter");
  const double b = detail::parse_double(args.substr(comma + 1), "parameter");
  if (name == "gamma") return DistributionSpec::gamma(a, b);
  if (name == "beta") return DistributionSpec::beta(a, b);
  if (name == "uniform") return DistributionSpec::uniform(a, b);
  throw ParseError("unknown distribution '" + std::string(name) + "'");
}

// (master_seed, stream_index) identifies an independent substream.
struct SeedSpec {
  std::uint64_t master_seed = 0;
  std::uint64_t stream_index = 0;

  std::uint64_t substream_seed() const {
    return detail::mix64(detail::mix64(master_seed) ^
                         detail::mix64(stream_index + 0x632be59bd9b4e019ULL));
  }
  // Nested substream: child(i) of distinct parents never collide in practice.
  SeedSpec child(std::uint64_t index) const {
    return SeedSpec{substream_seed(), index};
  }
  std::mt19937_64 engine() const { return std::mt19937_64(substream_seed()); }

  friend bool operator==(const SeedSpec&, const SeedSpec&) = default;
};

// Draws one value; never returns exactly zero.
template <class Engine>
double draw(const DistributionSpec& dist, Engine& rng) {
  for (;;) {
    const double x = std::visit(
        [&rng](const auto& k) -> double {
          using T = std::decay_t<decltype(k)>;
          if constexpr (std::is_same_v<T, StandardNormal>) {
            return std::normal_distribution<double>(0.0, 1.0)(rng);
          } else if constexpr (std::is_same_v<T, GammaDist>) {
            return std::gamma_distribution<double>(k.shape, k.scale)(rng);
          } else if constexpr (std::is_same_v<T, BetaDist>) {
            const double x = std::gamma_distribution<double>(k.alpha, 1.0)(rng);
            const double y = std::gamma_distribution<double>(k.beta, 1.0)(rng);
            return x / (x + y);
          } else if constexpr (std::is_same_v<T, UniformDist>) {
            return std::uniform_real_distribution<double>(k.lower, k.upper)(rng);
          } else {
            return k.value;
          }
        },
        dist.kind());
    if (x != 0.0 && std::isfinite(x)) return x;
  }
}

inline std::vector<double> sample_iid(const DistributionSpec& dist, int n,
                                      const SeedSpec& seed) {
  if (n < 2) throw ParameterError("sample_iid requires n >= 2");
  auto rng = seed.engine();
  std::vector<double> out(static_cast<std::size_t>(n));
  for (auto& x : out) x = draw(dist, rng);
  return out;
}

class UnitVector {
 public:
  std::span<const double> entries() const { return entries_; }
  int size() const { return static_cast<int>(entries_.size()); }
  double operator[](int i) const { return entries_[static_cast<std::size_t>(i)]; }

  friend UnitVector to_unit_vector(std::span<const double> u);

 private:
  explicit UnitVector(std::vector<double> v) : entries_(std::move(v)) {}
  std::vector<double> entries_;
};

// Scales u to Euclidean norm 1. Uses a scaled norm so that very large or
// very small entries do not overflow.
inline UnitVector to_unit_vector(std::span<const double> u) {
  if (u.empty()) throw DomainError("to_unit_vector: empty vector");
  double scale = 0.0;
  for (double x : u) {
    if (!std::isfinite(x))
      throw DomainError("to_unit_vector: non-finite entry");
    scale = std::max(scale, std::abs(x));
  }
  if (scale == 0.0) throw DomainError("to_unit_vector: zero vector");
  double sum = 0.0;
  for (double x : u) sum += (x / scale) * (x / scale);
  const double norm = std::sqrt(sum);
  std::vector<double> v(u.begin(), u.end());
  for (auto& x : v) x = (x / scale) / norm;
  return UnitVector(std::move(v));
}

// E(u^4), E(u^8), E(u^-4), E(u^-8); +infinity where the moment diverges.
struct MomentSet {
  double m4;
  double m8;
  double im4;
  double im8;

  bool all_finite() const {
    return std::isfinite(m4) && std::isfinite(m8) && std::isfinite(im4) &&
           std::isfinite(im8);
  }
};

namespace detail {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// E(u^k) for u ~ Gamma(shape, scale), any real k > -shape.
inline double gamma_moment(double shape, double scale, int k) {
  if (shape + k <= 0.0) return kInf;
  return std::exp(k * std::log(scale) + std::lgamma(shape + k) -
                  std::lgamma(shape));
}

inline double beta_moment(double a, double b, int k) {
  if (a + k <= 0.0) return kInf;
  return std::exp(std::lgamma(a + k) + std::lgamma(a + b) - std::lgamma(a) -
                  std::lgamma(a + b + k));
}

// E(u^k) for u ~ Uniform(lo, hi), k even and nonzero.
inline double uniform_moment(double lo, double hi, int k) {
  if (k < 0 && lo <= 0.0 && hi >= 0.0) return kInf;
  const double p = k + 1;
  return (std::pow(hi, p) - std::pow(lo, p)) / (p * (hi - lo));
}

}  // namespace detail

inline MomentSet moments(const DistributionSpec& dist) {
  using detail::kInf;
  return std::visit(
      [](const auto& k) -> MomentSet {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, StandardNormal>) {
          return {3.0, 105.0, kInf, kInf};
        } else if constexpr (std::is_same_v<T, GammaDist>) {
          return {detail::gamma_moment(k.shape, k.scale, 4),
                  detail::gamma_moment(k.shape, k.scale, 8),
                  detail::gamma_moment(k.shape, k.scale, -4),
                  detail::gamma_moment(k.shape, k.scale, -8)};
        } else if constexpr (std::is_same_v<T, BetaDist>) {
          return {detail::beta_moment(k.alpha, k.beta, 4),
                  detail::beta_moment(k.alpha, k.beta, 8),
                  detail::beta_moment(k.alpha, k.beta, -4),
                  detail::beta_moment(k.alpha, k.beta, -8)};
        } else if constexpr (std::is_same_v<T, UniformDist>) {
          return {detail::uniform_moment(k.lower, k.upper, 4),
                  detail::uniform_moment(k.lower, k.upper, 8),
                  detail::uniform_moment(k.lower, k.upper, -4),
                  detail::uniform_moment(k.lower, k.upper, -8)};
        } else {
          const double c4 = std::pow(k.value, 4);
          const double c8 = std::pow(k.value, 8);
          return {c4, c8, 1.0 / c4, 1.0 / c8};
        }
      },
      dist.kind());
}

}  // namespace mixcheck
