#pragma once

// Measure-preserving fixture maps with known ergodic behaviour, and the
// one-iteration point simulation that turns them into transition data.

#include <cmath>
#include <numbers>
#include <random>
#include <string>
#include <string_view>

#include "mixcheck/errors.hpp"
#include "mixcheck/parallel.hpp"
#include "mixcheck/rng_dist.hpp"
#include "mixcheck/ulam.hpp"

namespace mixcheck {

struct ProtocolSpec {
  enum class Kind { Identity, CircleRotation, CatMap, BakerMap };
  Kind kind = Kind::Identity;
  double theta = 0.0;  // CircleRotation only

  static ProtocolSpec identity() { return {Kind::Identity, 0.0}; }
  static ProtocolSpec rotation(double theta) { return {Kind::CircleRotation, theta}; }
  static ProtocolSpec cat_map() { return {Kind::CatMap, 0.0}; }
  static ProtocolSpec baker_map() { return {Kind::BakerMap, 0.0}; }

  // Identity runs on either domain; rotation on the circle; the two
  // hyperbolic maps on the torus.
  bool supports(Domain d) const {
    switch (kind) {
      case Kind::Identity:
        return true;
      case Kind::CircleRotation:
        return d == Domain::UnitInterval;
      case Kind::CatMap:
      case Kind::BakerMap:
        return d == Domain::UnitTorus2D;
    }
    return false;
  }

  std::string to_string() const {
    switch (kind) {
      case Kind::Identity:
        return "identity";
      case Kind::CircleRotation:
        return "rotation:" + detail::format_double(theta);
      case Kind::CatMap:
        return "cat";
      case Kind::BakerMap:
        return "baker";
    }
    return "identity";
  }
};

inline constexpr double kGoldenRatioConjugate = std::numbers::phi - 1.0;

// identity | rotation:THETA | golden | cat | baker
inline ProtocolSpec parse_protocol(std::string_view text) {
  if (text == "identity") return ProtocolSpec::identity();
  if (text == "cat") return ProtocolSpec::cat_map();
  if (text == "baker") return ProtocolSpec::baker_map();
  if (text == "golden") return ProtocolSpec::rotation(kGoldenRatioConjugate);
  constexpr std::string_view prefix = "rotation:";
  if (text.substr(0, prefix.size()) == prefix) {
    const auto arg = text.substr(prefix.size());
    const auto slash = arg.find('/');
    if (slash != std::string_view::npos) {
      const double p = detail::parse_double(arg.substr(0, slash), "rotation numerator");
      const double q = detail::parse_double(arg.substr(slash + 1), "rotation denominator");
      if (q == 0.0) throw ParseError("rotation denominator is zero");
      return ProtocolSpec::rotation(p / q);
    }
    return ProtocolSpec::rotation(detail::parse_double(arg, "rotation angle"));
  }
  throw ParseError("unknown protocol '" + std::string(text) + "'");
}

inline Point apply(const ProtocolSpec& spec, const Point& p) {
  using detail::wrap_unit;
  switch (spec.kind) {
    case ProtocolSpec::Kind::Identity:
      return p;
    case ProtocolSpec::Kind::CircleRotation:
      return {wrap_unit(p.x + spec.theta), p.y};
    case ProtocolSpec::Kind::CatMap:
      return {wrap_unit(p.x + p.y), wrap_unit(p.x + 2.0 * p.y)};
    case ProtocolSpec::Kind::BakerMap: {
      const double twice = 2.0 * p.x;
      const double fold = std::floor(twice);
      return {wrap_unit(twice), (p.y + fold) / 2.0};
    }
  }
  return p;
}

/// For each region, points_per_region uniform points inside the cell are
/// mapped once. Region r draws from substream seed.child(r), and the
/// output is ordered by start region.
inline TransitionData simulate(const ProtocolSpec& protocol, const PartitionSpec& partition,
                               int points_per_region, const SeedSpec& seed,
                               unsigned threads = default_thread_count()) {
  if (points_per_region < 1) throw ParameterError("points_per_region must be >= 1");
  if (!protocol.supports(partition.domain))
    throw ConfigError("protocol '" + protocol.to_string() +
                      "' is not defined on the requested partition domain");
  const int n = partition.n();
  const auto m = static_cast<std::size_t>(points_per_region);
  TransitionData data{n, std::vector<Transition>(static_cast<std::size_t>(n) * m)};
  parallel_for(static_cast<std::size_t>(n), threads, [&](std::size_t r) {
    auto rng = seed.child(r).engine();
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const int region = static_cast<int>(r);
    const int col = region % partition.nx;
    const int row = region / partition.nx;
    for (std::size_t k = 0; k < m; ++k) {
      Point p;
      // Redraw the rare point that rounds onto the far cell boundary.
      do {
        p.x = (col + unit(rng)) / partition.nx;
        p.y = partition.domain == Domain::UnitTorus2D ? (row + unit(rng)) / partition.ny
                                                      : 0.0;
      } while (region_of(p, partition) != region);
      data.pairs[r * m + k] = {region, region_of(apply(protocol, p), partition)};
    }
  });
  return data;
}

}  // namespace mixcheck
