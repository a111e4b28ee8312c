#pragma once

// Subcommand implementations for the mixcheck tool. Each writes its primary
// output to `out`; main() owns argument parsing and file handling.

#include <charconv>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>

#include "mixcheck/mixcheck.hpp"

namespace mixcheck::cli {

inline std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open '" + path + "'");
  return in;
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write '" + path + "'");
  out << content;
}

struct CriticalValuesOptions {
  int n = 0;
  int samples = 5000;
  std::string dist;
  double alpha1 = 0.05;
  double alpha2 = 0.05;
  std::string perm1 = "identity";
  std::string perm2 = "any";
  std::optional<std::uint64_t> seed;
  unsigned threads = 1;
  std::string sample1_out, sample2_out, ecdf1_out, ecdf2_out;
};

inline void cmd_critical_values(const CriticalValuesOptions& o, std::ostream& out) {
  if (!o.seed) throw ConfigError("--seed is required");
  if (o.dist.empty()) throw ConfigError("--dist is required");
  CriticalValueRequest req;
  req.n = o.n;
  req.samples = o.samples;
  req.dist = parse_distribution(o.dist);
  req.alpha1 = o.alpha1;
  req.alpha2 = o.alpha2;
  req.perm1 = parse_perm_constraint(o.perm1);
  req.perm2 = parse_perm_constraint(o.perm2);
  req.seed = *o.seed;
  if (req.n < 3) throw ConfigError("Monte Carlo critical values require --n >= 3");
  const auto run = establish_critical_values(req, o.threads);
  out << to_json(run.values).dump(2) << '\n';

  auto dump_csv = [](const std::string& path, auto&& writer) {
    if (path.empty()) return;
    std::ostringstream s;
    writer(s);
    write_file(path, s.str());
  };
  dump_csv(o.sample1_out, [&](std::ostream& s) { write_sample_csv(s, run.sample1); });
  dump_csv(o.sample2_out, [&](std::ostream& s) { write_sample_csv(s, run.sample2); });
  dump_csv(o.ecdf1_out, [&](std::ostream& s) {
    write_ecdf_csv(s, ecdf(run.sample1, EcdfTransform::DistFromOne));
  });
  dump_csv(o.ecdf2_out, [&](std::ostream& s) {
    write_ecdf_csv(s, ecdf(run.sample2, EcdfTransform::Modulus));
  });
}

struct TestOptions {
  std::string transitions;
  std::string counts;
  std::string critical_values;
  double epsilon = 1e-3;
};

inline void cmd_test(const TestOptions& o, std::ostream& out) {
  if (o.critical_values.empty()) throw ConfigError("--cv is required");
  if (o.transitions.empty() == o.counts.empty())
    throw ConfigError("exactly one of --transitions or --counts is required");
  auto cv_in = open_input(o.critical_values);
  Json cv_json;
  try {
    cv_json = Json::parse(cv_in);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("critical values JSON: ") + e.what());
  }
  const auto cv = critical_values_from_json(cv_json);
  TestReport report;
  if (!o.transitions.empty()) {
    auto in = open_input(o.transitions);
    report = run_test(load_transitions(in, cv.n()), cv, o.epsilon);
  } else {
    auto in = open_input(o.counts);
    report = run_test(empirical_matrix(load_counts(in)), cv, o.epsilon);
  }
  out << to_json(report).dump(2) << '\n';
}

struct SimulateOptions {
  std::string protocol;
  std::string grid;
  int points_per_region = 10000;
  std::optional<std::uint64_t> seed;
  unsigned threads = 1;
};

inline void cmd_simulate(const SimulateOptions& o, std::ostream& out) {
  if (!o.seed) throw ConfigError("--seed is required");
  const auto data = simulate(parse_protocol(o.protocol), parse_grid(o.grid),
                             o.points_per_region, SeedSpec{*o.seed, 0}, o.threads);
  write_transitions(out, data);
}

struct BoundsOptions {
  std::string kind;
  std::string n_range;
  std::string dist;
  double alpha = 0.0;
  std::string format = "csv";
};

// "11..20" or "10".
inline std::pair<int, int> parse_n_range(const std::string& text) {
  auto to_int = [&](std::string_view s) {
    int v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
      throw ParseError("invalid n range '" + text + "'");
    return v;
  };
  const auto dots = text.find("..");
  if (dots == std::string::npos) {
    const int v = to_int(text);
    return {v, v};
  }
  const std::string_view sv(text);
  const int lo = to_int(sv.substr(0, dots));
  const int hi = to_int(sv.substr(dots + 2));
  if (lo > hi) throw ParseError("empty n range '" + text + "'");
  return {lo, hi};
}

inline void cmd_bounds(const BoundsOptions& o, std::ostream& out) {
  const auto [lo, hi] = parse_n_range(o.n_range);
  std::function<BoundResult(int)> bound;
  if (o.kind == "normal") {
    bound = [](int n) { return bound_normal(n); };
  } else if (o.kind == "gamma") {
    if (!(o.alpha > 0.0)) throw ConfigError("--alpha > 0 is required for gamma bounds");
    bound = [a = o.alpha](int n) { return bound_gamma(n, a); };
  } else if (o.kind == "general") {
    if (o.dist.empty()) throw ConfigError("--dist is required for general bounds");
    bound = [m = moments(parse_distribution(o.dist))](int n) { return bound_general(n, m); };
  } else {
    throw ConfigError("unknown bound kind '" + o.kind + "'");
  }
  if (o.format == "json") {
    Json rows = Json::array();
    for (int n = lo; n <= hi; ++n) {
      const auto b = bound(n);
      rows.push_back(Json{{"kind", o.kind},
                          {"n", n},
                          {"value", b.valid() ? Json(b.value) : Json(nullptr)},
                          {"status", b.valid() ? "valid" : "precondition_violated"},
                          {"reason", b.reason}});
    }
    out << rows.dump(2) << '\n';
  } else if (o.format == "csv") {
    out << "kind,n,value,status,reason\n";
    for (int n = lo; n <= hi; ++n) write_bound_row(out, o.kind, bound(n));
  } else {
    throw ConfigError("unknown format '" + o.format + "'");
  }
}

struct EntropyOptions {
  std::string transitions;
  std::string counts;
  int n = 0;
  std::optional<double> upper_bound;
};

inline void cmd_entropy(const EntropyOptions& o, std::ostream& out) {
  if (o.upper_bound) {
    out << Json{{"entropy_upper_bound", *o.upper_bound},
                {"suggested_n", suggest_partition_count(*o.upper_bound)}}
               .dump(2)
        << '\n';
    return;
  }
  if (o.transitions.empty() == o.counts.empty())
    throw ConfigError("give one of --transitions (with --n), --counts, or --upper-bound");
  std::optional<EmpiricalStochasticMatrix> p;
  if (!o.transitions.empty()) {
    if (o.n < 1) throw ConfigError("--n is required with --transitions");
    auto in = open_input(o.transitions);
    p.emplace(transition_counts(load_transitions(in, o.n)));
  } else {
    auto in = open_input(o.counts);
    p.emplace(load_counts(in));
  }
  out << Json{{"n", p->n()},
              {"entropy_nats", froyland_entropy(*p)},
              {"max_entropy_nats", std::log(static_cast<double>(p->n()))}}
             .dump(2)
      << '\n';
}

struct TwoRegionOptions {
  std::optional<double> v1;
  std::string beta;
  std::string branch = "plus";
};

inline void cmd_two_region(const TwoRegionOptions& o, std::ostream& out) {
  Branch b;
  if (o.branch == "plus") {
    b = Branch::Plus;
  } else if (o.branch == "minus") {
    b = Branch::Minus;
  } else {
    throw ConfigError("--branch must be plus or minus");
  }
  if (o.v1.has_value() == !o.beta.empty())
    throw ConfigError("exactly one of --v1 or --beta is required");
  if (o.v1) {
    out << Json{{"v1", *o.v1}, {"branch", o.branch},
                {"lambda2", lambda2_two_region({*o.v1, b})}}
               .dump(2)
        << '\n';
    return;
  }
  const auto comma = o.beta.find(',');
  if (comma == std::string::npos) throw ParseError("--beta expects ALPHA,BETA");
  const double a = detail::parse_double(std::string_view(o.beta).substr(0, comma), "alpha");
  const double bb = detail::parse_double(std::string_view(o.beta).substr(comma + 1), "beta");
  out << Json{{"alpha", a}, {"beta", bb}, {"branch", o.branch},
              {"expected_lambda2", expected_lambda2_beta(a, bb, b)}}
             .dump(2)
      << '\n';
}

}  // namespace mixcheck::cli
