#pragma once

// Ulam's method: equal-measure grid partitions, transition counting and
// the row-normalized empirical stochastic matrix.

#include <Eigen/Dense>

#include <charconv>
#include <cmath>
#include <cstdint>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mixcheck/errors.hpp"

namespace mixcheck {

using CountMatrix = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;

enum class Domain { UnitInterval, UnitTorus2D };

struct Point {
  double x = 0.0;
  double y = 0.0;
};

/// Uniform grid of half-open cells. For the torus, cells are numbered
/// row-major with x selecting the column and y the row.
struct PartitionSpec {
  Domain domain = Domain::UnitInterval;
  int nx = 1;
  int ny = 1;

  static PartitionSpec interval(int cells) {
    if (cells < 1) throw ParameterError("interval partition needs >= 1 cell");
    return {Domain::UnitInterval, cells, 1};
  }
  static PartitionSpec torus(int cols, int rows) {
    if (cols < 1 || rows < 1) throw ParameterError("torus grid needs >= 1x1 cells");
    return {Domain::UnitTorus2D, cols, rows};
  }

  int n() const { return nx * ny; }
};

// Parses "16" (interval) or "8x8" (torus, cols x rows).
inline PartitionSpec parse_grid(std::string_view text) {
  auto to_int = [&](std::string_view s) {
    int v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || v < 1)
      throw ParseError("invalid grid '" + std::string(text) + "'");
    return v;
  };
  const auto x = text.find('x');
  if (x == std::string_view::npos) return PartitionSpec::interval(to_int(text));
  return PartitionSpec::torus(to_int(text.substr(0, x)), to_int(text.substr(x + 1)));
}

namespace detail {

// Coordinate reduced mod 1 into [0, 1).
inline double wrap_unit(double x) {
  double r = x - std::floor(x);
  if (r >= 1.0) r = 0.0;
  return r;
}

inline int cell_index(double x, int cells) {
  int i = static_cast<int>(std::floor(wrap_unit(x) * cells));
  return i >= cells ? cells - 1 : i;
}

}  // namespace detail

inline int region_of(const Point& p, const PartitionSpec& spec) {
  if (spec.domain == Domain::UnitInterval) return detail::cell_index(p.x, spec.nx);
  const int col = detail::cell_index(p.x, spec.nx);
  const int row = detail::cell_index(p.y, spec.ny);
  return row * spec.nx + col;
}

struct Transition {
  int start;
  int end;
  friend bool operator==(const Transition&, const Transition&) = default;
};

struct TransitionData {
  int n = 0;
  std::vector<Transition> pairs;
};

inline CountMatrix transition_counts(const TransitionData& data) {
  if (data.n < 1) throw DataError("transition data needs n >= 1 regions");
  CountMatrix counts = CountMatrix::Zero(data.n, data.n);
  for (std::size_t k = 0; k < data.pairs.size(); ++k) {
    const auto& t = data.pairs[k];
    if (t.start < 0 || t.start >= data.n || t.end < 0 || t.end >= data.n)
      throw DataError("transition " + std::to_string(k + 1) + " (" +
                      std::to_string(t.start) + "," + std::to_string(t.end) +
                      ") has a region index outside [0, " + std::to_string(data.n) + ")");
    ++counts(t.start, t.end);
  }
  return counts;
}

/// Row-normalized transition counts. Every region must have been sampled.
class EmpiricalStochasticMatrix {
 public:
  explicit EmpiricalStochasticMatrix(CountMatrix counts) : counts_(std::move(counts)) {
    if (counts_.rows() != counts_.cols() || counts_.rows() < 1)
      throw ShapeError("count matrix must be square and nonempty");
    const auto n = counts_.rows();
    points_.resize(static_cast<std::size_t>(n));
    entries_.resize(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
      std::int64_t total = 0;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (counts_(i, j) < 0)
          throw DataError("negative count at (" + std::to_string(i) + "," +
                          std::to_string(j) + ")");
        total += counts_(i, j);
      }
      if (total == 0)
        throw DataError("region " + std::to_string(i) +
                        " is unsampled: no points start there");
      points_[static_cast<std::size_t>(i)] = total;
      for (Eigen::Index j = 0; j < n; ++j)
        entries_(i, j) = static_cast<double>(counts_(i, j)) / static_cast<double>(total);
    }
  }

  int n() const { return static_cast<int>(entries_.rows()); }
  const Eigen::MatrixXd& entries() const { return entries_; }
  const CountMatrix& counts() const { return counts_; }
  const std::vector<std::int64_t>& points_per_region() const { return points_; }

 private:
  CountMatrix counts_;
  Eigen::MatrixXd entries_;
  std::vector<std::int64_t> points_;
};

inline EmpiricalStochasticMatrix empirical_matrix(CountMatrix counts) {
  return EmpiricalStochasticMatrix(std::move(counts));
}

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

inline bool parse_int64(std::string_view s, std::int64_t& out) {
  s = trim(s);
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size() && !s.empty();
}

}  // namespace detail

/// Reads the `start,end` CSV. Row numbers in errors count data rows from 1.
inline TransitionData load_transitions(std::istream& in, int n) {
  if (n < 1) throw ParameterError("load_transitions requires n >= 1");
  std::string line;
  if (!std::getline(in, line) || detail::trim(line) != "start,end")
    throw ParseError("transitions CSV must begin with the header 'start,end'");
  TransitionData data{n, {}};
  std::size_t row = 0;
  while (std::getline(in, line)) {
    const auto text = detail::trim(line);
    if (text.empty()) continue;
    ++row;
    const auto comma = text.find(',');
    std::int64_t a = 0, b = 0;
    if (comma == std::string_view::npos || !detail::parse_int64(text.substr(0, comma), a) ||
        !detail::parse_int64(text.substr(comma + 1), b))
      throw ParseError("row " + std::to_string(row) + ": expected two integers, got '" +
                       std::string(text) + "'");
    if (a < 0 || a >= n || b < 0 || b >= n)
      throw ParseError("row " + std::to_string(row) + ": region index out of range [0, " +
                       std::to_string(n) + ")");
    data.pairs.push_back({static_cast<int>(a), static_cast<int>(b)});
  }
  return data;
}

inline void write_transitions(std::ostream& os, const TransitionData& data) {
  os << "start,end\n";
  for (const auto& t : data.pairs) os << t.start << ',' << t.end << '\n';
}

/// Pre-aggregated counts: n lines of n comma-separated nonnegative integers.
inline CountMatrix load_counts(std::istream& in) {
  std::vector<std::vector<std::int64_t>> rows;
  std::string line;
  while (std::getline(in, line)) {
    const auto text = detail::trim(line);
    if (text.empty()) continue;
    std::vector<std::int64_t> row;
    std::size_t pos = 0;
    for (;;) {
      const auto comma = text.find(',', pos);
      std::int64_t v = 0;
      const auto field = text.substr(pos, comma == std::string_view::npos ? text.npos : comma - pos);
      if (!detail::parse_int64(field, v) || v < 0)
        throw ParseError("counts row " + std::to_string(rows.size() + 1) +
                         ": invalid count '" + std::string(field) + "'");
      row.push_back(v);
      if (comma == std::string_view::npos) break;
      pos = comma + 1;
    }
    rows.push_back(std::move(row));
  }
  const auto n = rows.size();
  if (n == 0) throw ParseError("counts file is empty");
  CountMatrix counts(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i].size() != n)
      throw ParseError("counts row " + std::to_string(i + 1) + " has " +
                       std::to_string(rows[i].size()) + " fields, expected " +
                       std::to_string(n));
    for (std::size_t j = 0; j < n; ++j)
      counts(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
  }
  return counts;
}

}  // namespace mixcheck
