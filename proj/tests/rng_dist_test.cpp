#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "mixcheck/rng_dist.hpp"
#include "test_util.hpp"

namespace mixcheck {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

TEST(SampleIid, ConstantDistribution) {
  const auto u = sample_iid(DistributionSpec::constant(3.0), 4, SeedSpec{99, 0});
  EXPECT_EQ(u, (std::vector<double>{3, 3, 3, 3}));
}

TEST(SampleIid, DeterministicGivenSeed) {
  const SeedSpec seed{12345, 7};
  EXPECT_EQ(sample_iid(DistributionSpec::normal(), 5, seed),
            sample_iid(DistributionSpec::normal(), 5, seed));
  EXPECT_NE(sample_iid(DistributionSpec::normal(), 5, seed),
            sample_iid(DistributionSpec::normal(), 5, SeedSpec{12345, 8}));
}

TEST(SampleIid, GammaMeanWithinThreeStandardErrors) {
  const int n = 100000;
  const auto u = sample_iid(DistributionSpec::gamma(2.0, 1.0), n, SeedSpec{2024, 0});
  // Var = shape * scale^2 = 2.
  const double se = std::sqrt(2.0 / n);
  EXPECT_NEAR(testing::mean(u), 2.0, 3.0 * se);
}

TEST(SampleIid, BetaAndUniformStayInSupport) {
  for (double x : sample_iid(DistributionSpec::beta(0.5, 2.0), 20000, SeedSpec{1, 1})) {
    EXPECT_GT(x, 0.0);
    EXPECT_LT(x, 1.0);
  }
  for (double x : sample_iid(DistributionSpec::uniform(-2.0, -1.0), 20000, SeedSpec{1, 2})) {
    EXPECT_GE(x, -2.0);
    EXPECT_LT(x, -1.0);
  }
}

TEST(SampleIid, RejectsSmallN) {
  EXPECT_THROW(sample_iid(DistributionSpec::normal(), 1, SeedSpec{}), ParameterError);
}

// Engine whose first output maps to exactly 0.0 under uniform(0, 1).
struct ScriptedEngine {
  using result_type = std::uint64_t;
  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
  int calls = 0;
  result_type operator()() { return calls++ == 0 ? 0 : (result_type{1} << 63); }
};

TEST(Draw, ExactZeroIsRedrawn) {
  ScriptedEngine rng;
  const double x = draw(DistributionSpec::uniform(0.0, 1.0), rng);
  EXPECT_EQ(x, 0.5);
  EXPECT_GE(rng.calls, 2);
}

TEST(DistributionSpec, InvalidParameters) {
  EXPECT_THROW(DistributionSpec::gamma(0.0, 1.0), ParameterError);
  EXPECT_THROW(DistributionSpec::gamma(1.0, -1.0), ParameterError);
  EXPECT_THROW(DistributionSpec::beta(1.0, 0.0), ParameterError);
  EXPECT_THROW(DistributionSpec::uniform(1.0, 1.0), ParameterError);
  EXPECT_THROW(DistributionSpec::constant(0.0), ParameterError);
}

TEST(DistributionSpec, ParseGrammar) {
  EXPECT_EQ(parse_distribution("normal").to_string(), "normal");
  EXPECT_EQ(parse_distribution("gamma:2,1").to_string(), "gamma:2,1");
  EXPECT_EQ(parse_distribution("beta:0.5,3").to_string(), "beta:0.5,3");
  EXPECT_EQ(parse_distribution("uniform:-1,2").to_string(), "uniform:-1,2");
  EXPECT_EQ(parse_distribution("const:1").to_string(), "const:1");
  EXPECT_THROW(parse_distribution("cauchy"), ParseError);
  EXPECT_THROW(parse_distribution("gamma:2"), ParseError);
  EXPECT_THROW(parse_distribution("gamma:x,1"), ParseError);
  EXPECT_THROW(parse_distribution("const:0"), ParameterError);
}

TEST(ToUnitVector, Examples) {
  const std::vector<double> a{1, 0, 0};
  auto v = to_unit_vector(a);
  EXPECT_DOUBLE_EQ(v[0], 1.0);
  EXPECT_DOUBLE_EQ(v[1], 0.0);

  const std::vector<double> b{3, 4};
  v = to_unit_vector(b);
  EXPECT_NEAR(v[0], 0.6, 1e-15);
  EXPECT_NEAR(v[1], 0.8, 1e-15);

  const std::vector<double> c(7, -2.5);
  v = to_unit_vector(c);
  for (double x : v.entries()) EXPECT_NEAR(x, -1.0 / std::sqrt(7.0), 1e-15);
}

TEST(ToUnitVector, Errors) {
  const std::vector<double> zero{0, 0, 0};
  EXPECT_THROW(to_unit_vector(zero), DomainError);
  const std::vector<double> bad{1, std::nan(""), 0};
  EXPECT_THROW(to_unit_vector(bad), DomainError);
  const std::vector<double> inf{1, kInf};
  EXPECT_THROW(to_unit_vector(inf), DomainError);
}

TEST(ToUnitVector, NormOneAndScaleInvariant) {
  for (std::uint64_t s = 0; s < 200; ++s) {
    auto u = sample_iid(DistributionSpec::normal(), 2 + static_cast<int>(s % 40), SeedSpec{s, 3});
    const auto v = to_unit_vector(u);
    double norm2 = 0.0;
    for (double x : v.entries()) norm2 += x * x;
    EXPECT_NEAR(norm2, 1.0, 1e-12);

    const double scale = std::exp(static_cast<double>(s % 17) - 8.0) * 1e3;
    for (auto& x : u) x *= scale;
    const auto w = to_unit_vector(u);
    for (int i = 0; i < v.size(); ++i) EXPECT_NEAR(v[i], w[i], 1e-14);
  }
}

TEST(Moments, StandardNormal) {
  const auto m = moments(DistributionSpec::normal());
  // Numerical-integration oracle for the even moments.
  const double pdf_norm = 1.0 / std::sqrt(2.0 * M_PI);
  auto moment = [&](int k) {
    return testing::simpson([&](double x) { return std::pow(x, k) * pdf_norm * std::exp(-x * x / 2); },
                            -40.0, 40.0);
  };
  EXPECT_NEAR(m.m4, moment(4), 1e-9);
  EXPECT_NEAR(m.m8, moment(8), 1e-7);
  EXPECT_DOUBLE_EQ(m.m4, 3.0);
  EXPECT_DOUBLE_EQ(m.m8, 105.0);
  EXPECT_EQ(m.im4, kInf);
  EXPECT_EQ(m.im8, kInf);
  EXPECT_FALSE(m.all_finite());
}

TEST(Moments, Constant) {
  const auto m = moments(DistributionSpec::constant(2.0));
  EXPECT_DOUBLE_EQ(m.m4, 16.0);
  EXPECT_DOUBLE_EQ(m.m8, 256.0);
  EXPECT_DOUBLE_EQ(m.im4, 1.0 / 16.0);
  EXPECT_DOUBLE_EQ(m.im8, 1.0 / 256.0);
}

TEST(Moments, GammaInverseEighthAgainstQuadrature) {
  const double shape = 11.0;
  const auto m = moments(DistributionSpec::gamma(shape, 1.0));
  // u^k times the Gamma(shape, 1) density, folded into one power.
  auto moment = [shape](int k) {
    return testing::simpson(
        [=](double u) { return std::pow(u, k + shape - 1) * std::exp(-u - std::lgamma(shape)); },
        0.0, 200.0);
  };
  EXPECT_NEAR(m.im8 / moment(-8), 1.0, 1e-10);
  EXPECT_NEAR(m.im4 / moment(-4), 1.0, 1e-10);
  EXPECT_NEAR(m.m8 / moment(8), 1.0, 1e-10);
  EXPECT_NEAR(m.im8, 2.0 / 3628800.0, 1e-18);
}

TEST(Moments, GammaFiniteOnlyAboveThresholds) {
  auto m = moments(DistributionSpec::gamma(4.0, 2.0));
  EXPECT_EQ(m.im4, kInf);  // needs shape > 4
  EXPECT_EQ(m.im8, kInf);
  m = moments(DistributionSpec::gamma(5.0, 2.0));
  EXPECT_TRUE(std::isfinite(m.im4));
  EXPECT_EQ(m.im8, kInf);
  // Scale enters as scale^k.
  EXPECT_NEAR(m.m4, std::pow(2.0, 4) * 5 * 6 * 7 * 8, 1e-9);
}

TEST(Moments, BetaAndUniformAgainstQuadrature) {
  const double a = 9.5, b = 2.0;
  const auto mb = moments(DistributionSpec::beta(a, b));
  const double beta_fn = std::exp(std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b));
  auto beta_moment = [&](int k) {
    return testing::simpson(
        [&](double x) {
          if (x <= 0.0 || x >= 1.0) return 0.0;
          return std::pow(x, k + a - 1) * std::pow(1 - x, b - 1) / beta_fn;
        },
        0.0, 1.0);
  };
  EXPECT_NEAR(mb.m4, beta_moment(4), 1e-8);
  EXPECT_NEAR(mb.m8, beta_moment(8), 1e-8);
  EXPECT_NEAR(mb.im4 / beta_moment(-4), 1.0, 1e-7);
  EXPECT_NEAR(mb.im8 / beta_moment(-8), 1.0, 1e-6);

  const auto mu = moments(DistributionSpec::uniform(1.0, 3.0));
  auto uni = [](int k) {
    return testing::simpson([k](double x) { return std::pow(x, k) / 2.0; }, 1.0, 3.0);
  };
  EXPECT_NEAR(mu.m4 / uni(4), 1.0, 1e-10);
  EXPECT_NEAR(mu.m8 / uni(8), 1.0, 1e-10);
  EXPECT_NEAR(mu.im4 / uni(-4), 1.0, 1e-10);
  EXPECT_NEAR(mu.im8 / uni(-8), 1.0, 1e-10);

  EXPECT_EQ(moments(DistributionSpec::uniform(-1.0, 1.0)).im4, kInf);
}

TEST(Moments, MonteCarloInverseEighthForLargeShape) {
  // shape 20 keeps E(u^-16) finite so the standard error is meaningful.
  const auto dist = DistributionSpec::gamma(20.0, 0.5);
  const auto u = sample_iid(dist, 1000000, SeedSpec{77, 0});
  std::vector<double> inv8(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) inv8[i] = std::pow(u[i], -8.0);
  const double se = testing::std_error(inv8);
  EXPECT_NEAR(testing::mean(inv8), moments(dist).im8, 5.0 * se);
}

TEST(SeedSpec, SubstreamsDiffer) {
  const SeedSpec base{5, 0};
  EXPECT_NE(base.child(0).substream_seed(), base.child(1).substream_seed());
  EXPECT_NE(SeedSpec({5, 0}).substream_seed(), SeedSpec({5, 1}).substream_seed());
  EXPECT_EQ(base.child(3).substream_seed(), SeedSpec({5, 0}).child(3).substream_seed());
}

}  // namespace
}  // namespace mixcheck
