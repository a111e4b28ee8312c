// Classifies Arnold's cat map on an 8x8 torus grid end to end.

#include <iostream>

#include "mixcheck/mixcheck.hpp"

int main() {
  using namespace mixcheck;

  CriticalValueRequest req;
  req.n = 64;
  req.samples = 2000;
  req.seed = 42;
  const auto cv = establish_critical_values(req).values;

  const auto data = simulate(ProtocolSpec::cat_map(), PartitionSpec::torus(8, 8), 10000,
                             SeedSpec{7, 0});
  const auto report = run_test(data, cv);
  std::cout << to_json(report).dump(2) << '\n';
}
