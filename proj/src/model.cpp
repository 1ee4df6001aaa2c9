#include "norden/model.hpp"

#include <cmath>
#include <string>

namespace norden {

namespace {

inline std::size_t at3(int dim, int i, int j, int k) {
  return (static_cast<std::size_t>(i) * dim + j) * dim + k;
}

}  // namespace

LieAlgebraModel LieAlgebraModel::validate(int dim, std::vector<double> coefficients,
                                          double eps_jacobi) {
  if (dim < 2 || dim % 2 != 0) throw Error("model dimension must be even and >= 2");
  const std::size_t expected = static_cast<std::size_t>(dim) * dim * dim;
  if (coefficients.size() != expected)
    throw Error("structure constant array must have dim^3 entries");

  // antisymmetry in the lower pair
  double worst = 0.0;
  int wi = 0, wj = 0, wk = 0;
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      for (int k = 0; k < dim; ++k) {
        const double r =
            std::abs(coefficients[at3(dim, i, j, k)] + coefficients[at3(dim, j, i, k)]);
        if (r > worst) {
          worst = r;
          wi = i; wj = j; wk = k;
        }
      }
  if (worst > 1e-13)
    throw AntisymmetryViolation("structure constants not antisymmetric at (" +
                                    std::to_string(wi) + "," + std::to_string(wj) + "," +
                                    std::to_string(wk) + "): residual " +
                                    std::to_string(worst),
                                wi, wj, wk);

  const double jac = jacobi_residual(dim, coefficients);
  if (jac > eps_jacobi) {
    // locate the worst triple for the error message
    double best = -1.0;
    int bi = 0, bj = 0, bk = 0;
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j)
        for (int k = 0; k < dim; ++k)
          for (int m = 0; m < dim; ++m) {
            double s = 0.0;
            for (int l = 0; l < dim; ++l) {
              s += coefficients[at3(dim, j, k, l)] * coefficients[at3(dim, i, l, m)];
              s += coefficients[at3(dim, k, i, l)] * coefficients[at3(dim, j, l, m)];
              s += coefficients[at3(dim, i, j, l)] * coefficients[at3(dim, k, l, m)];
            }
            if (std::abs(s) > best) {
              best = std::abs(s);
              bi = i; bj = j; bk = k;
            }
          }
    throw JacobiViolation("Jacobi identity fails at (" + std::to_string(bi) + "," +
                              std::to_string(bj) + "," + std::to_string(bk) +
                              "): residual " + std::to_string(jac),
                          bi, bj, bk);
  }
  return LieAlgebraModel(dim, std::move(coefficients));
}

double LieAlgebraModel::max_abs() const {
  double m = 0.0;
  for (double v : c_) m = std::max(m, std::abs(v));
  return m;
}

double LieAlgebraModel::jacobi_residual(int dim, const std::vector<double>& c) {
  double worst = 0.0;
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      for (int k = 0; k < dim; ++k)
        for (int m = 0; m < dim; ++m) {
          double s = 0.0;
          for (int l = 0; l < dim; ++l) {
            s += c[at3(dim, j, k, l)] * c[at3(dim, i, l, m)];
            s += c[at3(dim, k, i, l)] * c[at3(dim, j, l, m)];
            s += c[at3(dim, i, j, l)] * c[at3(dim, k, l, m)];
          }
          worst = std::max(worst, std::abs(s));
        }
  return worst;
}

Connection levi_civita(const LieAlgebraModel& model, const MetricMatrix& g) {
  const int dim = model.dim();
  if (g.dim() != dim) throw Error("metric dimension does not match model");

  // Cg[i][j][k] = g([e_i,e_j], e_k)
  auto cg = [&](int i, int j, int k) {
    double s = 0.0;
    for (int m = 0; m < dim; ++m) s += model.c(i, j, m) * g(m, k);
    return s;
  };

  std::vector<double> gamma(static_cast<std::size_t>(dim) * dim * dim, 0.0);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) {
      for (int l = 0; l < dim; ++l) {
        double s = 0.0;
        for (int k = 0; k < dim; ++k) {
          const double koszul = 0.5 * (cg(i, j, k) - cg(j, k, i) + cg(k, i, j));
          s += koszul * g.inv(k, l);
        }
        gamma[at3(dim, i, j, l)] = s;
      }
    }
  return Connection(dim, std::move(gamma));
}

double torsion_residual(const Connection& conn, const LieAlgebraModel& model) {
  const int dim = conn.dim();
  if (model.dim() != dim) throw Error("shape mismatch");
  double worst = 0.0;
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      for (int k = 0; k < dim; ++k)
        worst = std::max(
            worst, std::abs(conn.gamma(i, j, k) - conn.gamma(j, i, k) - model.c(i, j, k)));
  return worst;
}

double metricity_residual(const Connection& conn, const MetricMatrix& g) {
  const int dim = conn.dim();
  if (g.dim() != dim) throw Error("shape mismatch");
  double worst = 0.0;
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      for (int k = 0; k < dim; ++k) {
        double s = 0.0;
        for (int m = 0; m < dim; ++m)
          s += conn.gamma(i, j, m) * g(m, k) + conn.gamma(i, k, m) * g(j, m);
        worst = std::max(worst, std::abs(s));
      }
  return worst;
}

}  // namespace norden
