#pragma once

#include <Eigen/Dense>
#include <cassert>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "norden/errors.hpp"

namespace norden {

/// Tolerance set used across the library. All checks take explicit
/// tolerances with these defaults.
struct Tolerances {
  double lin = 1e-10;         // linear-algebra residuals
  double degenerate = 1e-8;   // |det| / eigenvalue floor for metrics
  double jacobi = 1e-10;      // Jacobi identity residual
  double cls = 1e-8;          // class-membership residuals
  double iso = 1e-8;          // isotropic-plane guard
  double verify = 1e-8;       // identity-check residuals
};

/// Dense real tensor of rank r over a 2n-dimensional model space,
/// row-major by index order. Rank 0 is a scalar.
class DenseTensor {
 public:
  DenseTensor(int dim, int rank);

  int dim() const { return dim_; }
  int rank() const { return rank_; }
  std::size_t size() const { return data_.size(); }

  std::span<const double> data() const { return data_; }
  std::span<double> data() { return data_; }

  template <typename... I>
  double operator()(I... idx) const {
    return data_[offset(idx...)];
  }
  template <typename... I>
  double& operator()(I... idx) {
    return data_[offset(idx...)];
  }

  double max_abs() const;

  DenseTensor& operator+=(const DenseTensor& other);
  DenseTensor& operator-=(const DenseTensor& other);
  DenseTensor& operator*=(double s);
  friend DenseTensor operator+(DenseTensor a, const DenseTensor& b) { return a += b; }
  friend DenseTensor operator-(DenseTensor a, const DenseTensor& b) { return a -= b; }
  friend DenseTensor operator*(double s, DenseTensor t) { return t *= s; }

 private:
  template <typename... I>
  std::size_t offset(I... idx) const {
    assert(static_cast<int>(sizeof...(I)) == rank_);
    std::size_t off = 0;
    ((off = off * static_cast<std::size_t>(dim_) + static_cast<std::size_t>(idx)), ...);
    return off;
  }

  int dim_;
  int rank_;
  std::vector<double> data_;
};

/// Inverse of a symmetric nondegenerate matrix. Throws DegenerateMetric if
/// |det g| <= eps_deg; the product residual ||g g^-1 - I||_inf must come out
/// <= eps_lin.
Eigen::MatrixXd metric_inverse(const Eigen::MatrixXd& g, double eps_deg = 1e-8,
                               double eps_lin = 1e-10);

/// Eigenvalue signature (positive count, negative count) of a symmetric
/// matrix. Eigenvalues within eps_deg of zero are an error, never silently
/// classified.
std::pair<int, int> signature(const Eigen::MatrixXd& g, double eps_deg = 1e-8);

/// Validated pseudo-Riemannian metric of split signature (n,n) with its
/// cached inverse. Entries are stored exactly symmetric.
class MetricMatrix {
 public:
  explicit MetricMatrix(Eigen::MatrixXd entries, const Tolerances& tol = {});

  int dim() const { return static_cast<int>(entries_.rows()); }
  const Eigen::MatrixXd& entries() const { return entries_; }
  const Eigen::MatrixXd& inverse() const { return inverse_; }
  double operator()(int i, int j) const { return entries_(i, j); }
  double inv(int i, int j) const { return inverse_(i, j); }

 private:
  Eigen::MatrixXd entries_;
  Eigen::MatrixXd inverse_;
};

enum class Weight { kMetric, kInverse };

/// One contraction: slots (first, second) of the operand are traced against
/// the chosen weight matrix.
struct SlotPair {
  int first;
  int second;
  Weight weight;
};

/// Contract pairs of slots against the metric or its inverse. Rank drops by
/// two per pair; the result does not depend on pair order.
DenseTensor contract(const DenseTensor& t, const MetricMatrix& g,
                     std::span<const SlotPair> pairs);

/// Same contraction with one explicit weight matrix for every pair.
DenseTensor contract(const DenseTensor& t, const Eigen::MatrixXd& weight,
                     std::span<const std::pair<int, int>> pairs);

}  // namespace norden
