// mixcheck: classify a stirring protocol from one-iteration transition data.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "commands.hpp"

namespace {

void emit(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
  } else {
    mixcheck::cli::write_file(path, text);
  }
}

}  // namespace

int main(int argc, char** argv) {
  using namespace mixcheck::cli;
  CLI::App app{"Ergodicity and weak-mixing tests from Ulam matrices with "
               "Householder Monte Carlo critical values"};
  app.require_subcommand(1);
  app.fallthrough();

  unsigned threads = mixcheck::default_thread_count();
  std::string out_path;
  app.add_option("--threads", threads, "Worker threads (default: MIXCHECK_THREADS or all cores)")
      ->check(CLI::PositiveNumber);
  app.add_option("-o,--out", out_path, "Write the primary output here instead of stdout");

  CriticalValuesOptions cv;
  auto* cv_cmd = app.add_subcommand("critical-values", "Monte Carlo critical values c1, c2");
  cv_cmd->add_option("--n", cv.n, "Partition count (>= 3)")->required();
  cv_cmd->add_option("--N", cv.samples, "Monte Carlo sample size (>= 100)");
  cv_cmd->add_option("--dist", cv.dist,
                     "normal | gamma:A,B | beta:A,B | uniform:A,B | const:C")
      ->required();
  cv_cmd->add_option("--alpha1", cv.alpha1, "Level for the nonergodic region");
  cv_cmd->add_option("--alpha2", cv.alpha2, "Level for the weak-mixing region");
  cv_cmd->add_option("--perm1", cv.perm1, "Permutations for the c1 sample: identity | any | min-cycles:K");
  cv_cmd->add_option("--perm2", cv.perm2, "Permutations for the c2 sample");
  std::string both_perms;
  cv_cmd->add_option("--perm-constraint", both_perms, "Use one constraint for both samples");
  cv_cmd->add_option("--seed", cv.seed, "Master seed (required)");
  cv_cmd->add_option("--sample1-out", cv.sample1_out, "CSV of the c1 lambda2 sample");
  cv_cmd->add_option("--sample2-out", cv.sample2_out, "CSV of the c2 lambda2 sample");
  cv_cmd->add_option("--ecdf1-out", cv.ecdf1_out, "ECDF CSV of |lambda2 - 1| (c1 sample)");
  cv_cmd->add_option("--ecdf2-out", cv.ecdf2_out, "ECDF CSV of |lambda2| (c2 sample)");

  TestOptions test;
  auto* test_cmd = app.add_subcommand("test", "Run the hypothesis test on transition data");
  test_cmd->add_option("--transitions", test.transitions, "start,end CSV");
  test_cmd->add_option("--counts", test.counts, "n x n count matrix CSV");
  test_cmd->add_option("--cv", test.critical_values, "Critical values JSON")->required();
  test_cmd->add_option("--epsilon", test.epsilon, "Mixing-rate threshold");

  SimulateOptions sim;
  auto* sim_cmd = app.add_subcommand("simulate", "Transition data from a fixture map");
  sim_cmd->add_option("--protocol", sim.protocol,
                      "identity | rotation:THETA | rotation:P/Q | golden | cat | baker")
      ->required();
  sim_cmd->add_option("--grid", sim.grid, "K (interval) or KxM (torus)")->required();
  sim_cmd->add_option("--points-per-region", sim.points_per_region);
  sim_cmd->add_option("--seed", sim.seed, "Master seed (required)");

  BoundsOptions bounds;
  auto* bounds_cmd = app.add_subcommand("bounds", "Upper bounds on E||M - I||_F^2");
  bounds_cmd->add_option("--kind", bounds.kind, "general | normal | gamma")->required();
  bounds_cmd->add_option("--n", bounds.n_range, "N or LO..HI")->required();
  bounds_cmd->add_option("--dist", bounds.dist, "Distribution for --kind general");
  bounds_cmd->add_option("--alpha", bounds.alpha, "Gamma shape for --kind gamma");
  bounds_cmd->add_option("--format", bounds.format, "csv | json");

  EntropyOptions ent;
  auto* ent_cmd = app.add_subcommand("entropy", "Entropy estimate or partition-count suggestion");
  ent_cmd->add_option("--transitions", ent.transitions, "start,end CSV");
  ent_cmd->add_option("--n", ent.n, "Region count for --transitions");
  ent_cmd->add_option("--counts", ent.counts, "n x n count matrix CSV");
  ent_cmd->add_option("--upper-bound", ent.upper_bound, "Known entropy upper bound h (nats)");

  TwoRegionOptions two;
  auto* two_cmd = app.add_subcommand("two-region", "Closed forms for two regions");
  two_cmd->add_option("--v1", two.v1, "First component of the unit vector");
  two_cmd->add_option("--beta", two.beta, "ALPHA,BETA for v1 ~ Beta");
  two_cmd->add_option("--branch", two.branch, "plus (identity) | minus (swap)");

  CLI11_PARSE(app, argc, argv);

  try {
    std::ostringstream out;
    if (*cv_cmd) {
      if (!both_perms.empty()) cv.perm1 = cv.perm2 = both_perms;
      cv.threads = threads;
      cmd_critical_values(cv, out);
    } else if (*test_cmd) {
      cmd_test(test, out);
    } else if (*sim_cmd) {
      sim.threads = threads;
      cmd_simulate(sim, out);
    } else if (*bounds_cmd) {
      cmd_bounds(bounds, out);
    } else if (*ent_cmd) {
      cmd_entropy(ent, out);
    } else if (*two_cmd) {
      cmd_two_region(two, out);
    }
    emit(out_path, out.str());
  } catch (const std::exception& e) {
    std::cerr << "mixcheck: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
