#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "mixcheck/critical_values.hpp"
#include "mixcheck/ulam.hpp"
#include "test_util.hpp"

namespace mixcheck {
namespace {

CountMatrix counts2(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) {
  CountMatrix m(2, 2);
  m << a, b, c, d;
  return m;
}

TEST(TransitionCounts, Examples) {
  EXPECT_EQ(transition_counts({2, {{0, 0}, {0, 0}, {1, 1}, {1, 1}}}), counts2(2, 0, 0, 2));
  EXPECT_EQ(transition_counts({2, {{0, 0}, {0, 1}, {1, 0}, {1, 0}, {1, 0}, {1, 1}}}),
            counts2(1, 1, 3, 1));
  EXPECT_EQ(transition_counts({2, {}}), counts2(0, 0, 0, 0));
}

TEST(TransitionCounts, OutOfRangeNamesTransition) {
  try {
    transition_counts({2, {{0, 1}, {1, 2}}});
    FAIL() << "expected DataError";
  } catch (const DataError& e) {
    EXPECT_NE(std::string(e.what()).find("transition 2"), std::string::npos);
  }
}

TEST(EmpiricalMatrix, Examples) {
  auto p = empirical_matrix(counts2(2, 0, 0, 2));
  EXPECT_EQ(p.entries(), Eigen::Matrix2d::Identity());
  p = empirical_matrix(counts2(1, 1, 3, 1));
  EXPECT_DOUBLE_EQ(p.entries()(0, 0), 0.5);
  EXPECT_DOUBLE_EQ(p.entries()(0, 1), 0.5);
  EXPECT_DOUBLE_EQ(p.entries()(1, 0), 0.75);
  EXPECT_DOUBLE_EQ(p.entries()(1, 1), 0.25);
  EXPECT_EQ(p.points_per_region(), (std::vector<std::int64_t>{2, 4}));
}

TEST(EmpiricalMatrix, UnsampledRegion) {
  try {
    empirical_matrix(counts2(0, 0, 1, 1));
    FAIL() << "expected DataError";
  } catch (const DataError& e) {
    EXPECT_NE(std::string(e.what()).find("region 0"), std::string::npos);
  }
  EXPECT_THROW(empirical_matrix(CountMatrix(2, 3)), ShapeError);
  EXPECT_THROW(empirical_matrix(counts2(1, -1, 1, 1)), DataError);
}

TEST(EmpiricalMatrix, RowsSumToOne) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> cnt(0, 1000);
  for (int rep = 0; rep < 50; ++rep) {
    const int n = 2 + rep % 12;
    CountMatrix c(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) c(i, j) = cnt(rng);
    for (int i = 0; i < n; ++i) c(i, i) += 1;
    const auto p = empirical_matrix(c);
    EXPECT_LT((p.entries().rowwise().sum().array() - 1.0).abs().maxCoeff(), 1e-12);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        EXPECT_EQ(p.entries()(i, j), static_cast<double>(c(i, j)) /
                                         static_cast<double>(p.points_per_region()[i]));
  }
}

TEST(EmpiricalMatrix, ConvergesToTrueMatrixWithMorePoints) {
  const int n = 6;
  const auto truth = generate_unistochastic(n, DistributionSpec::normal(), PermConstraint::any(),
                                            SeedSpec{123, 0})
                         .entries();
  auto median_error = [&](int m) {
    std::vector<double> err;
    for (int rep = 0; rep < 50; ++rep) {
      std::mt19937_64 rng(static_cast<std::uint64_t>(rep * 7919 + m));
      CountMatrix c = CountMatrix::Zero(n, n);
      for (int i = 0; i < n; ++i) {
        std::vector<double> w(truth.row(i).begin(), truth.row(i).end());
        std::discrete_distribution<int> row(w.begin(), w.end());
        for (int k = 0; k < m; ++k) ++c(i, row(rng));
      }
      err.push_back((empirical_matrix(c).entries() - truth).norm());
    }
    return testing::median(err);
  };
  EXPECT_GT(median_error(100), median_error(10000));
}

TEST(LoadTransitions, Examples) {
  std::istringstream a("start,end\n0,1\n1,0\n");
  const auto d = load_transitions(a, 2);
  EXPECT_EQ(d.n, 2);
  EXPECT_EQ(d.pairs, (std::vector<Transition>{{0, 1}, {1, 0}}));

  std::istringstream b("start,end\n0,5\n");
  try {
    load_transitions(b, 2);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("row 1"), std::string::npos);
  }

  std::istringstream c("start,end\n");
  EXPECT_TRUE(load_transitions(c, 3).pairs.empty());
}

TEST(LoadTransitions, Malformed) {
  std::istringstream no_header("0,1\n");
  EXPECT_THROW(load_transitions(no_header, 2), ParseError);
  std::istringstream text("start,end\n0,1\nx,1\n");
  try {
    load_transitions(text, 2);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("row 2"), std::string::npos);
  }
  std::istringstream neg("start,end\n-1,0\n");
  EXPECT_THROW(load_transitions(neg, 2), ParseError);
}

TEST(LoadTransitions, RoundTrip) {
  const TransitionData d{3, {{0, 2}, {2, 1}, {1, 1}}};
  std::stringstream s;
  write_transitions(s, d);
  EXPECT_EQ(load_transitions(s, 3).pairs, d.pairs);
}

TEST(LoadCounts, ParsesSquareMatrix) {
  std::istringstream in("1,2\n3,4\n");
  EXPECT_EQ(load_counts(in), counts2(1, 2, 3, 4));
  std::istringstream ragged("1,2\n3\n");
  EXPECT_THROW(load_counts(ragged), ParseError);
  std::istringstream neg("1,-2\n3,4\n");
  EXPECT_THROW(load_counts(neg), ParseError);
  std::istringstream empty("");
  EXPECT_THROW(load_counts(empty), ParseError);
}

TEST(RegionOf, Examples) {
  EXPECT_EQ(region_of({0.30, 0.0}, PartitionSpec::interval(4)), 1);
  EXPECT_EQ(region_of({0.75, 0.25}, PartitionSpec::torus(2, 2)), 1);
  EXPECT_EQ(region_of({1.0, 1.0}, PartitionSpec::torus(2, 2)), 0);
  EXPECT_EQ(region_of({-0.1, 0.0}, PartitionSpec::interval(10)), 9);
}

TEST(RegionOf, GridCellsHaveEqualMeasure) {
  const auto spec = PartitionSpec::torus(4, 3);
  std::vector<int> hits(static_cast<std::size_t>(spec.n()), 0);
  const int k = 240;
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      const int r = region_of({(i + 0.5) / k, (j + 0.5) / k}, spec);
      ASSERT_GE(r, 0);
      ASSERT_LT(r, spec.n());
      ++hits[static_cast<std::size_t>(r)];
    }
  for (int h : hits) EXPECT_EQ(h, k * k / spec.n());
}

TEST(ParseGrid, Forms) {
  auto g = parse_grid("16");
  EXPECT_EQ(g.domain, Domain::UnitInterval);
  EXPECT_EQ(g.n(), 16);
  g = parse_grid("8x4");
  EXPECT_EQ(g.domain, Domain::UnitTorus2D);
  EXPECT_EQ(g.nx, 8);
  EXPECT_EQ(g.ny, 4);
  EXPECT_THROW(parse_grid("0"), ParseError);
  EXPECT_THROW(parse_grid("8x"), ParseError);
  EXPECT_THROW(parse_grid("abc"), ParseError);
}

}  // namespace
}  // namespace mixcheck
