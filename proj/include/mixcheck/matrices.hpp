#pragma once

// Householder reflectors, permutations, and the unistochastic matrices
// obtained by squaring the entries of their products.

#include <Eigen/Dense>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <numeric>
#include <ostream>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "mixcheck/errors.hpp"
#include "mixcheck/rng_dist.hpp"

namespace mixcheck {

using Matrix = Eigen::MatrixXd;

/// Reflector I - 2 v v^T for a unit vector v. Symmetric, orthogonal and
/// an involution.
class HouseholderMatrix {
 public:
  explicit HouseholderMatrix(UnitVector v) : generator_(std::move(v)) {
    const int n = generator_.size();
    entries_.resize(n, n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        const double vij = generator_[i] * generator_[j];
        entries_(i, j) = (i == j ? 1.0 : 0.0) - 2.0 * vij;
      }
    }
  }

  int dim() const { return generator_.size(); }
  const Matrix& entries() const { return entries_; }
  const UnitVector& generator() const { return generator_; }

 private:
  UnitVector generator_;
  Matrix entries_;
};

inline HouseholderMatrix householder(UnitVector v) {
  return HouseholderMatrix(std::move(v));
}

/// Permutation stored as an index map: row i of Q has its single 1 in
/// column perm[i], so (Q A) has row i equal to row perm[i] of A.
class PermutationMatrix {
 public:
  explicit PermutationMatrix(std::vector<int> perm) : perm_(std::move(perm)) {
    const int n = dim();
    std::vector<char> seen(perm_.size(), 0);
    for (int p : perm_) {
      if (p < 0 || p >= n || seen[static_cast<std::size_t>(p)])
        throw DomainError("PermutationMatrix: index map is not a bijection");
      seen[static_cast<std::size_t>(p)] = 1;
    }
  }

  static PermutationMatrix identity(int n) {
    std::vector<int> p(static_cast<std::size_t>(n));
    std::iota(p.begin(), p.end(), 0);
    return PermutationMatrix(std::move(p));
  }

  int dim() const { return static_cast<int>(perm_.size()); }
  int operator[](int i) const { return perm_[static_cast<std::size_t>(i)]; }
  const std::vector<int>& perm() const { return perm_; }
  bool is_identity() const {
    for (int i = 0; i < dim(); ++i)
      if ((*this)[i] != i) return false;
    return true;
  }

  // Equals the multiplicity of eigenvalue 1.
  int cycle_count() const { return count_cycles(perm_); }

  Matrix dense() const {
    Matrix q = Matrix::Zero(dim(), dim());
    for (int i = 0; i < dim(); ++i) q(i, (*this)[i]) = 1.0;
    return q;
  }

  // Q * A without materializing Q.
  Matrix apply_left(const Matrix& a) const {
    Matrix out(a.rows(), a.cols());
    for (int i = 0; i < dim(); ++i) out.row(i) = a.row((*this)[i]);
    return out;
  }

  static int count_cycles(const std::vector<int>& perm) {
    std::vector<char> seen(perm.size(), 0);
    int cycles = 0;
    for (std::size_t i = 0; i < perm.size(); ++i) {
      if (seen[i]) continue;
      ++cycles;
      for (std::size_t j = i; !seen[j]; j = static_cast<std::size_t>(perm[j]))
        seen[j] = 1;
    }
    return cycles;
  }

 private:
  std::vector<int> perm_;
};

/// Which permutations the Monte Carlo sampler draws Q from.
struct PermConstraint {
  enum class Kind { Any, MinCycles, Identity };
  Kind kind = Kind::Any;
  int min_cycles = 1;

  static PermConstraint any() { return {Kind::Any, 1}; }
  static PermConstraint at_least_cycles(int k) { return {Kind::MinCycles, k}; }
  static PermConstraint identity() { return {Kind::Identity, 0}; }

  std::string to_string() const {
    switch (kind) {
      case Kind::Any:
        return "any";
      case Kind::Identity:
        return "identity";
      case Kind::MinCycles:
        return "min-cycles:" + std::to_string(min_cycles);
    }
    return "any";
  }

  friend bool operator==(const PermConstraint&, const PermConstraint&) = default;
};

// any | identity | min-cycles:K
inline PermConstraint parse_perm_constraint(std::string_view text) {
  if (text == "any") return PermConstraint::any();
  if (text == "identity") return PermConstraint::identity();
  constexpr std::string_view prefix = "min-cycles:";
  if (text.substr(0, prefix.size()) == prefix) {
    const auto arg = text.substr(prefix.size());
    int k = 0;
    auto [ptr, ec] = std::from_chars(arg.data(), arg.data() + arg.size(), k);
    if (ec == std::errc() && ptr == arg.data() + arg.size() && k >= 1)
      return PermConstraint::at_least_cycles(k);
  }
  throw ParseError("unknown permutation constraint '" + std::string(text) + "'");
}

namespace detail {

// log of unsigned Stirling numbers of the first kind, table[m][c] for
// 0 <= c <= m <= n. Entries that are zero hold -infinity.
inline std::vector<std::vector<double>> log_stirling1(int n) {
  const double ninf = -std::numeric_limits<double>::infinity();
  std::vector<std::vector<double>> t(static_cast<std::size_t>(n) + 1);
  t[0] = {0.0};
  auto lse = [ninf](double a, double b) {
    if (a == ninf) return b;
    if (b == ninf) return a;
    const double hi = std::max(a, b);
    return hi + std::log1p(std::exp(std::min(a, b) - hi));
  };
  for (int m = 1; m <= n; ++m) {
    auto& row = t[static_cast<std::size_t>(m)];
    const auto& prev = t[static_cast<std::size_t>(m) - 1];
    row.assign(static_cast<std::size_t>(m) + 1, ninf);
    for (int c = 1; c <= m; ++c) {
      const double a = prev[static_cast<std::size_t>(c) - 1];
      const double b = c <= m - 1 ? std::log(m - 1.0) + prev[static_cast<std::size_t>(c)]
                                  : ninf;
      row[static_cast<std::size_t>(c)] = lse(a, b);
    }
  }
  return t;
}

// Uniform permutation with at least k cycles, sampled exactly through the
// recurrence s(m,c) = s(m-1,c-1) + (m-1) s(m-1,c).
template <class Engine>
std::vector<int> permutation_with_min_cycles(int n, int k, Engine& rng) {
  const auto ls = log_stirling1(n);
  const auto& top = ls[static_cast<std::size_t>(n)];
  const double peak = *std::max_element(top.begin() + k, top.end());
  std::vector<double> weights;
  for (int c = k; c <= n; ++c)
    weights.push_back(std::exp(top[static_cast<std::size_t>(c)] - peak));
  const int cycles = k + std::discrete_distribution<int>(weights.begin(), weights.end())(rng);

  // Decide top-down whether element m opens a new cycle, then build bottom-up.
  std::vector<char> opens(static_cast<std::size_t>(n) + 1, 0);
  for (int m = n, c = cycles; m >= 1; --m) {
    const double p_new =
        c >= 1 ? std::exp(ls[static_cast<std::size_t>(m) - 1][static_cast<std::size_t>(c) - 1] -
                          ls[static_cast<std::size_t>(m)][static_cast<std::size_t>(c)])
               : 0.0;
    if (std::uniform_real_distribution<double>(0.0, 1.0)(rng) < p_new) {
      opens[static_cast<std::size_t>(m)] = 1;
      --c;
    }
  }
  std::vector<int> perm(static_cast<std::size_t>(n));
  for (int m = 1; m <= n; ++m) {
    const auto idx = static_cast<std::size_t>(m) - 1;
    if (opens[static_cast<std::size_t>(m)]) {
      perm[idx] = m - 1;
    } else {
      const auto j = static_cast<std::size_t>(
          std::uniform_int_distribution<int>(0, m - 2)(rng));
      perm[idx] = perm[j];
      perm[j] = m - 1;
    }
  }
  return perm;
}

}  // namespace detail

template <class Engine>
PermutationMatrix random_permutation(int n, const PermConstraint& constraint,
                                     Engine& rng) {
  if (n < 2) throw ParameterError("random_permutation requires n >= 2");
  switch (constraint.kind) {
    case PermConstraint::Kind::Identity:
      return PermutationMatrix::identity(n);
    case PermConstraint::Kind::Any: {
      std::vector<int> p(static_cast<std::size_t>(n));
      std::iota(p.begin(), p.end(), 0);
      std::shuffle(p.begin(), p.end(), rng);
      return PermutationMatrix(std::move(p));
    }
    case PermConstraint::Kind::MinCycles: {
      const int k = constraint.min_cycles;
      if (k < 1 || k > n)
        throw ParameterError("MinCycles(k) requires 1 <= k <= n");
      if (k == n) return PermutationMatrix::identity(n);
      if (k > 2) {
        return PermutationMatrix(detail::permutation_with_min_cycles(n, k, rng));
      }
      // Acceptance rate is at least 1 - 1/n for k = 2.
      std::vector<int> p(static_cast<std::size_t>(n));
      for (;;) {
        std::iota(p.begin(), p.end(), 0);
        std::shuffle(p.begin(), p.end(), rng);
        if (PermutationMatrix::count_cycles(p) >= k) return PermutationMatrix(p);
      }
    }
  }
  throw ParameterError("unknown permutation constraint");
}

inline PermutationMatrix random_permutation(int n, const PermConstraint& constraint,
                                            const SeedSpec& seed) {
  auto rng = seed.engine();
  return random_permutation(n, constraint, rng);
}

/// Bistochastic matrix equal to the entrywise square of an orthogonal
/// witness. The witness is kept so the unistochastic property can be
/// checked by construction.
class UnistochasticMatrix {
 public:
  UnistochasticMatrix(Matrix witness)  // NOLINT
      : witness_(std::move(witness)), entries_(witness_.cwiseAbs2()) {}

  int dim() const { return static_cast<int>(entries_.rows()); }
  const Matrix& entries() const { return entries_; }
  const Matrix& witness() const { return witness_; }

 private:
  Matrix witness_;
  Matrix entries_;
};

inline UnistochasticMatrix unistochastic_from(const PermutationMatrix& q,
                                              const HouseholderMatrix& h) {
  if (q.dim() != h.dim())
    throw ShapeError("unistochastic_from: permutation is " +
                     std::to_string(q.dim()) + "x" + std::to_string(q.dim()) +
                     " but Householder matrix is " + std::to_string(h.dim()) +
                     "x" + std::to_string(h.dim()));
  return UnistochasticMatrix(q.apply_left(h.entries()));
}

/// Unistochastic matrix of the constant generator vector: diagonal
/// (n-2)^2/n^2, off-diagonal 4/n^2, witness I - (2/n) J.
inline UnistochasticMatrix equal_components_matrix(int n) {
  if (n < 2) throw DomainError("equal_components_matrix requires n >= 2");
  const double dn = n;
  Matrix w = Matrix::Constant(n, n, -2.0 / dn);
  w.diagonal().array() += 1.0;
  return UnistochasticMatrix(std::move(w));
}

inline double max_row_sum_deviation(const Matrix& a) {
  return (a.rowwise().sum().array() - 1.0).abs().maxCoeff();
}
inline double max_col_sum_deviation(const Matrix& a) {
  return (a.colwise().sum().array() - 1.0).abs().maxCoeff();
}

/// Row-major CSV, shortest round-trip representation of each entry.
inline void write_csv(std::ostream& os, const Matrix& a) {
  char buf[64];
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), a(i, j));
      if (j) os << ',';
      os.write(buf, ptr - buf);
    }
    os << '\n';
  }
}

}  // namespace mixcheck
