#include "norden/structure.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace norden {

NordenStructure NordenStructure::validate(Eigen::MatrixXd J, Eigen::MatrixXd g,
                                          const Tolerances& tol) {
  if (J.rows() != J.cols() || g.rows() != g.cols() || J.rows() != g.rows())
    throw Error("J and g must be square matrices of equal dimension");
  const int dim = static_cast<int>(J.rows());
  if (dim < 2 || dim % 2 != 0) throw Error("dimension must be even and >= 2");

  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(dim, dim);
  const double jj = (J * J + id).cwiseAbs().maxCoeff();
  if (jj > tol.lin)
    throw NotAlmostComplex("J^2 + I residual " + std::to_string(jj));

  const double compat = (J.transpose() * g * J + g).cwiseAbs().maxCoeff();
  if (compat > tol.lin)
    throw NotNordenCompatible("J^T g J + g residual " + std::to_string(compat));

  // MetricMatrix construction enforces symmetry, nondegeneracy and (n,n).
  return NordenStructure(std::move(J), MetricMatrix(std::move(g), tol));
}

Eigen::MatrixXd associated_metric(const NordenStructure& s) {
  return s.metric().entries() * s.J();
}

DenseTensor nabla_J(const Connection& conn, const NordenStructure& s) {
  const int dim = s.dim();
  if (conn.dim() != dim) throw Error("shape mismatch");
  DenseTensor nj(dim, 3);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      for (int k = 0; k < dim; ++k) {
        double v = 0.0;
        for (int m = 0; m < dim; ++m)
          v += conn.gamma(i, m, k) * s.j(m, j) - s.j(k, m) * conn.gamma(i, j, m);
        nj(i, j, k) = v;
      }
  return nj;
}

DenseTensor lower_nabla_J(const DenseTensor& nj, const MetricMatrix& g) {
  const int dim = nj.dim();
  DenseTensor f(dim, 3);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      for (int k = 0; k < dim; ++k) {
        double v = 0.0;
        for (int m = 0; m < dim; ++m) v += nj(i, j, m) * g(m, k);
        f(i, j, k) = v;
      }
  return f;
}

DenseTensor f_tensor(const Connection& conn, const NordenStructure& s) {
  return lower_nabla_J(nabla_J(conn, s), s.metric());
}

DenseTensor lie_form(const DenseTensor& f, const Eigen::MatrixXd& g_inv) {
  const int dim = f.dim();
  if (f.rank() != 3) throw Error("lie_form expects a rank-3 tensor");
  if (g_inv.rows() != dim || g_inv.cols() != dim) throw Error("shape mismatch");
  DenseTensor theta(dim, 1);
  for (int k = 0; k < dim; ++k) {
    double v = 0.0;
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) v += g_inv(i, j) * f(i, j, k);
    theta(k) = v;
  }
  return theta;
}

DenseTensor nabla_F(const Connection& conn, const DenseTensor& f) {
  const int dim = f.dim();
  if (conn.dim() != dim || f.rank() != 3) throw Error("shape mismatch");
  DenseTensor df(dim, 4);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      for (int k = 0; k < dim; ++k)
        for (int l = 0; l < dim; ++l) {
          double v = 0.0;
          for (int m = 0; m < dim; ++m)
            v -= conn.gamma(i, j, m) * f(m, k, l) + conn.gamma(i, k, m) * f(j, m, l) +
                 conn.gamma(i, l, m) * f(j, k, m);
          df(i, j, k, l) = v;
        }
  return df;
}

DenseTensor w1_component(const NordenStructure& s, const DenseTensor& theta) {
  const int dim = s.dim();
  if (theta.rank() != 1 || theta.dim() != dim) throw Error("theta must be rank 1");
  const Eigen::MatrixXd gJ = s.metric().entries() * s.J();
  Eigen::VectorXd th(dim), thJ(dim);
  for (int k = 0; k < dim; ++k) th(k) = theta(k);
  thJ = s.J().transpose() * th;  // (theta J)_k = theta_m J^m_k
  DenseTensor f(dim, 3);
  const double coef = 1.0 / dim;
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      for (int k = 0; k < dim; ++k)
        f(i, j, k) = coef * (s.g(i, j) * th(k) + s.g(i, k) * th(j) +
                             gJ(i, j) * thJ(k) + gJ(i, k) * thJ(j));
  return f;
}

ClassMembership classify(const DenseTensor& f, const NordenStructure& s, double eps_class) {
  const int dim = s.dim();
  if (f.rank() != 3 || f.dim() != dim) throw Error("classify expects a rank-3 tensor");

  ClassMembership m;
  m.eps_class = eps_class;
  const double scale = std::max(1.0, f.max_abs());

  const DenseTensor theta = lie_form(f, s.metric().inverse());
  m.theta_norm = theta.max_abs();

  m.residual_w0 = f.max_abs() / scale;

  DenseTensor w1 = w1_component(s, theta);
  double rw1 = 0.0, rw3 = 0.0, rw2cyc = 0.0;
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      for (int k = 0; k < dim; ++k) {
        rw1 = std::max(rw1, std::abs(f(i, j, k) - w1(i, j, k)));
        rw3 = std::max(rw3, std::abs(f(i, j, k) + f(j, k, i) + f(k, i, j)));
        // cyclic sum of F(x, y, Jz)
        double c2 = 0.0;
        for (int a = 0; a < dim; ++a)
          c2 += f(i, j, a) * s.j(a, k) + f(j, k, a) * s.j(a, i) + f(k, i, a) * s.j(a, j);
        rw2cyc = std::max(rw2cyc, std::abs(c2));
      }
  m.residual_w1 = rw1 / scale;
  m.residual_w2 = std::max(rw2cyc, m.theta_norm) / scale;
  m.residual_w3 = rw3 / scale;

  m.is_w0 = m.residual_w0 <= eps_class;
  m.is_w1 = m.residual_w1 <= eps_class;
  m.is_w2 = m.residual_w2 <= eps_class;
  m.is_w3 = m.residual_w3 <= eps_class;
  return m;
}

}  // namespace norden
