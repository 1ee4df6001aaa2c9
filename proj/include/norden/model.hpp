#pragma once

#include <vector>

#include "norden/tensor.hpp"

namespace norden {

/// Lie algebra on the model space, given by constant structure constants
/// C^k_{ij} for the frame bracket [e_i, e_j] = C^k_{ij} e_k. Instances are
/// validated: antisymmetric in (i,j) and Jacobi holds within tolerance.
class LieAlgebraModel {
 public:
  /// coefficients laid out as c[(i*dim + j)*dim + k] = C^k_{ij}.
  static LieAlgebraModel validate(int dim, std::vector<double> coefficients,
                                  double eps_jacobi = 1e-10);

  int dim() const { return dim_; }
  double c(int i, int j, int k) const {
    return c_[(static_cast<std::size_t>(i) * dim_ + j) * dim_ + k];
  }
  const std::vector<double>& coefficients() const { return c_; }
  double max_abs() const;

  /// Max |sum_cyc C^m_{il} C^l_{jk}| over all (i,j,k,m).
  static double jacobi_residual(int dim, const std::vector<double>& c);

 private:
  LieAlgebraModel(int dim, std::vector<double> c) : dim_(dim), c_(std::move(c)) {}
  int dim_;
  std::vector<double> c_;
};

/// Frame connection coefficients, nabla_{e_i} e_j = Gamma^k_{ij} e_k.
/// Lower indices are (direction, argument).
class Connection {
 public:
  Connection(int dim, std::vector<double> gamma) : dim_(dim), gamma_(std::move(gamma)) {}

  int dim() const { return dim_; }
  double gamma(int i, int j, int k) const {
    return gamma_[(static_cast<std::size_t>(i) * dim_ + j) * dim_ + k];
  }
  std::vector<double>& data() { return gamma_; }
  const std::vector<double>& data() const { return gamma_; }

 private:
  int dim_;
  std::vector<double> gamma_;
};

/// Levi-Civita connection of a constant-frame metric via the Koszul formula
/// 2 g(nabla_X Y, Z) = g([X,Y],Z) - g([Y,Z],X) + g([Z,X],Y).
Connection levi_civita(const LieAlgebraModel& model, const MetricMatrix& g);

/// Max |Gamma^k_{ij} - Gamma^k_{ji} - C^k_{ij}|.
double torsion_residual(const Connection& conn, const LieAlgebraModel& model);

/// Max |Gamma^m_{ij} g_{mk} + Gamma^m_{ik} g_{jm}| (frame components of g constant).
double metricity_residual(const Connection& conn, const MetricMatrix& g);

}  // namespace norden
