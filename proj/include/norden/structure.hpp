#pragma once

#include <Eigen/Dense>

#include "norden/model.hpp"
#include "norden/tensor.hpp"

namespace norden {

/// Almost complex structure with Norden metric on the model space:
/// J^2 = -I and g(JX, JY) = -g(X, Y), signature necessarily (n,n).
class NordenStructure {
 public:
  static NordenStructure validate(Eigen::MatrixXd J, Eigen::MatrixXd g,
                                  const Tolerances& tol = {});

  int dim() const { return g_.dim(); }
  const Eigen::MatrixXd& J() const { return J_; }
  const MetricMatrix& metric() const { return g_; }
  double g(int i, int j) const { return g_(i, j); }
  double ginv(int i, int j) const { return g_.inv(i, j); }
  double j(int k, int m) const { return J_(k, m); }

  /// g(x, y) for frame-component vectors.
  double pair(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const {
    return x.dot(g_.entries() * y);
  }

 private:
  NordenStructure(Eigen::MatrixXd J, MetricMatrix g) : J_(std::move(J)), g_(std::move(g)) {}
  Eigen::MatrixXd J_;
  MetricMatrix g_;
};

/// Associated metric g~(X,Y) = g(X, JY). Also a Norden metric for the same J.
Eigen::MatrixXd associated_metric(const NordenStructure& s);

/// Mixed components of the covariant derivative of J in the constant frame:
/// result(i, j, k) = (nabla_{e_i} J)^k_j  (direction, argument, value).
DenseTensor nabla_J(const Connection& conn, const NordenStructure& s);

/// Fundamental tensor F(X,Y,Z) = g((nabla_X J)Y, Z), rank-3 covariant.
DenseTensor f_tensor(const Connection& conn, const NordenStructure& s);

/// Lower the value slot of nabla_J with g: F(i,j,k) = NJ(i,j,m) g_{mk}.
DenseTensor lower_nabla_J(const DenseTensor& nj, const MetricMatrix& g);

/// Lie form theta_k = g^{ij} F_{ijk}.
DenseTensor lie_form(const DenseTensor& f, const Eigen::MatrixXd& g_inv);

/// Covariant derivative of F in the constant frame, rank 4:
/// result(i,j,k,l) = (nabla_{e_i} F)(e_j, e_k, e_l).
DenseTensor nabla_F(const Connection& conn, const DenseTensor& f);

/// Trace part of an F-type tensor reproduced from a covector: the unique
/// rank-3 tensor with the F symmetries whose Lie form is exactly theta.
/// Coefficient 1/dim, fixed by lie_form(w1_component(theta)) == theta.
DenseTensor w1_component(const NordenStructure& s, const DenseTensor& theta);

/// Membership in the Kahler class W0 and the basic classes W1, W2, W3.
/// Residuals are scaled by max(1, max|F|); each boolean is
/// (residual <= eps_class), and W0 implies the other three.
struct ClassMembership {
  bool is_w0 = false, is_w1 = false, is_w2 = false, is_w3 = false;
  double residual_w0 = 0.0, residual_w1 = 0.0, residual_w2 = 0.0, residual_w3 = 0.0;
  double theta_norm = 0.0;
  double eps_class = 0.0;
};

ClassMembership classify(const DenseTensor& f, const NordenStructure& s,
                         double eps_class = 1e-8);

}  // namespace norden
