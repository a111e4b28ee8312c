#pragma once

// JSON and CSV forms of the artifacts the command-line tool exchanges:
// critical values, test reports, eigenvalue samples and ECDFs.

#include <charconv>
#include <ostream>
#include <string>

#include "json.hpp"
#include "mixcheck/analytic.hpp"
#include "mixcheck/critical_values.hpp"
#include "mixcheck/mixing_test.hpp"

namespace mixcheck {

using Json = nlohmann::ordered_json;

inline Json to_json(const CriticalValues& cv) {
  return Json{
      {"n", cv.null1.n},
      {"N", cv.null1.samples},
      {"dist", cv.null1.dist.to_string()},
      {"perm_constraint", Json{{"c1", cv.null1.perm.to_string()},
                               {"c2", cv.null2.perm.to_string()}}},
      {"alpha1", cv.alpha1},
      {"alpha2", cv.alpha2},
      {"c1", cv.c1},
      {"c2", cv.c2},
      {"achieved1", cv.achieved1},
      {"achieved2", cv.achieved2},
      {"clamped", cv.clamped},
      {"ties1", cv.ties1},
      {"ties2", cv.ties2},
      {"degenerate1", cv.degenerate1},
      {"degenerate2", cv.degenerate2},
      {"seed", cv.null1.seed.master_seed},
  };
}

inline CriticalValues critical_values_from_json(const Json& j) {
  try {
    CriticalValues cv;
    const int n = j.at("n").get<int>();
    const int samples = j.at("N").get<int>();
    const auto dist = parse_distribution(j.at("dist").get<std::string>());
    const auto seed = j.at("seed").get<std::uint64_t>();
    PermConstraint p1 = PermConstraint::identity();
    PermConstraint p2 = PermConstraint::any();
    const auto& pc = j.at("perm_constraint");
    if (pc.is_string()) {
      p1 = p2 = parse_perm_constraint(pc.get<std::string>());
    } else {
      p1 = parse_perm_constraint(pc.at("c1").get<std::string>());
      p2 = parse_perm_constraint(pc.at("c2").get<std::string>());
    }
    cv.null1 = McConfig{n, samples, dist, p1, SeedSpec{seed, 1}};
    cv.null2 = McConfig{n, samples, dist, p2, SeedSpec{seed, 2}};
    cv.alpha1 = j.at("alpha1").get<double>();
    cv.alpha2 = j.at("alpha2").get<double>();
    cv.c1 = j.at("c1").get<double>();
    cv.c2 = j.at("c2").get<double>();
    cv.achieved1 = j.value("achieved1", 0.0);
    cv.achieved2 = j.value("achieved2", 0.0);
    cv.clamped = j.value("clamped", false);
    cv.ties1 = j.value("ties1", false);
    cv.ties2 = j.value("ties2", false);
    cv.degenerate1 = j.value("degenerate1", false);
    cv.degenerate2 = j.value("degenerate2", false);
    return cv;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("critical values JSON: ") + e.what());
  }
}

inline Json to_json(const TestReport& r) {
  Json rate = nullptr;
  if (r.mixing_rate)
    rate = Json{{"modulus", r.mixing_rate->modulus},
                {"epsilon", r.mixing_rate->epsilon},
                {"iterations", r.mixing_rate->iterations}};
  return Json{
      {"n", r.n},
      {"lambda2_hat", Json{{"re", r.lambda2_hat.real()}, {"im", r.lambda2_hat.imag()}}},
      {"modulus", std::abs(r.lambda2_hat)},
      {"verdict", to_string(r.decision.verdict)},
      {"region", to_string(r.decision.region)},
      {"entropy_nats", r.entropy},
      {"mixing_rate", rate},
      {"critical_values", to_json(r.critical_values)},
      {"warnings", r.warnings},
  };
}

namespace detail {

inline void put_double(std::ostream& os, double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  os.write(buf, ptr - buf);
}

}  // namespace detail

inline void write_sample_csv(std::ostream& os, const Lambda2Sample& s) {
  os << "index,re,im,modulus,dist_from_one\n";
  for (std::size_t i = 0; i < s.values.size(); ++i) {
    const auto& z = s.values[i];
    os << i << ',';
    detail::put_double(os, z.real());
    os << ',';
    detail::put_double(os, z.imag());
    os << ',';
    detail::put_double(os, std::abs(z));
    os << ',';
    detail::put_double(os, std::abs(z - 1.0));
    os << '\n';
  }
}

inline void write_ecdf_csv(std::ostream& os, const std::vector<EcdfPoint>& points) {
  os << "value,cumulative\n";
  for (const auto& p : points) {
    detail::put_double(os, p.value);
    os << ',';
    detail::put_double(os, p.cumulative);
    os << '\n';
  }
}

inline void write_bound_row(std::ostream& os, const std::string& kind, const BoundResult& b) {
  os << kind << ',' << b.n << ',';
  if (b.valid()) {
    detail::put_double(os, b.value);
    os << ",valid,\n";
  } else {
    os << ",precondition_violated," << b.reason << '\n';
  }
}

}  // namespace mixcheck
