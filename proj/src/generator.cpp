#include "norden/generator.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <array>
#include <cmath>


namespace norden {

namespace {

inline std::size_t at3(int dim, int i, int j, int k) {
  return (static_cast<std::size_t>(i) * dim + j) * dim + k;
}

Eigen::MatrixXd canonical_j(int dim) {
  const int n = dim / 2;
  Eigen::MatrixXd j = Eigen::MatrixXd::Zero(dim, dim);
  for (int a = 0; a < n; ++a) {
    j(n + a, a) = 1.0;
    j(a, n + a) = -1.0;
  }
  return j;
}

Eigen::MatrixXd canonical_g(int dim) {
  const int n = dim / 2;
  Eigen::VectorXd d(dim);
  d.head(n).setOnes();
  d.tail(n).setConstant(-1.0);
  return d.asDiagonal();
}

double cond_estimate(const Eigen::MatrixXd& m) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const auto& sv = svd.singularValues();
  return sv(sv.size() - 1) > 0 ? sv(0) / sv(sv.size() - 1)
                               : std::numeric_limits<double>::infinity();
}

/// Cyclic sum of F over the three slots, evaluated on index multisets
/// i <= j <= k. F is symmetric in its last two slots, which makes the
/// cyclic sum fully symmetric, so the multisets carry all information.
std::vector<double> w3_constraint_vector(const std::vector<double>& c,
                                         const NordenStructure& s) {
  const int dim = s.dim();
  LieAlgebraModel model = LieAlgebraModel::validate(dim, c);
  Connection conn = levi_civita(model, s.metric());
  DenseTensor f = f_tensor(conn, s);
  std::vector<double> rows;
  for (int i = 0; i < dim; ++i)
    for (int j = i; j < dim; ++j)
      for (int k = j; k < dim; ++k)
        rows.push_back(f(i, j, k) + f(j, k, i) + f(k, i, j));
  return rows;
}

double max_nabla_j(const LieAlgebraModel& model, const NordenStructure& s) {
  return nabla_J(levi_civita(model, s.metric()), s).max_abs();
}

std::vector<double> combine(const std::vector<std::vector<double>>& basis,
                            const Eigen::VectorXd& coef) {
  std::vector<double> c(basis.front().size(), 0.0);
  for (int p = 0; p < coef.size(); ++p)
    for (std::size_t q = 0; q < c.size(); ++q) c[q] += coef(p) * basis[p][q];
  return c;
}

void normalize_max(std::vector<double>& c, double target) {
  double m = 0.0;
  for (double v : c) m = std::max(m, std::abs(v));
  if (m > 0) {
    const double sc = target / m;
    for (double& v : c) v *= sc;
  }
}

/// Nullspace basis of the constraint matrix; columns are coefficient vectors.
Eigen::MatrixXd constraint_nullspace(const std::vector<std::vector<double>>& basis,
                                     const NordenStructure& s) {
  const int cols = static_cast<int>(basis.size());
  std::vector<std::vector<double>> col_data;
  col_data.reserve(cols);
  for (const auto& b : basis) col_data.push_back(w3_constraint_vector(b, s));
  const int rows = static_cast<int>(col_data.front().size());
  Eigen::MatrixXd m(rows, cols);
  for (int p = 0; p < cols; ++p)
    for (int r = 0; r < rows; ++r) m(r, p) = col_data[p][r];

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double smax = sv.size() > 0 ? sv(0) : 0.0;
  const double thresh = std::max(1e-10 * smax, 1e-12);
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > thresh) ++rank;
  return svd.matrixV().rightCols(cols - rank);
}

}  // namespace

NordenStructure canonical_norden(int dim) {
  return NordenStructure::validate(canonical_j(dim), canonical_g(dim));
}

NordenStructure norden_from_conjugation(const Eigen::MatrixXd& P, const Eigen::MatrixXd& h,
                                        const Tolerances& tol) {
  const Eigen::MatrixXd j = P * canonical_j(static_cast<int>(P.rows())) * P.inverse();
  const Eigen::MatrixXd g = h - j.transpose() * h * j;
  return NordenStructure::validate(j, g, tol);
}

NordenStructure random_norden(SeededRng& rng, const GeneratorConfig& cfg) {
  const int dim = cfg.dim;
  for (int attempt = 0; attempt < cfg.max_retries * 8; ++attempt) {
    Eigen::MatrixXd p(dim, dim);
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) p(i, j) = rng.uniform(cfg.lo, cfg.hi);
    if (std::abs(p.determinant()) <= 0.1 || cond_estimate(p) > 20.0) continue;

    Eigen::MatrixXd h(dim, dim);
    for (int i = 0; i < dim; ++i)
      for (int j = i; j < dim; ++j) {
        h(i, j) = rng.uniform(cfg.lo, cfg.hi);
        h(j, i) = h(i, j);
      }
    try {
      NordenStructure s = norden_from_conjugation(p, h);
      // conditioning guard keeps identity residuals well inside tolerance
      if (cond_estimate(s.metric().entries()) > 200.0) continue;
      return s;
    } catch (const Error&) {
      continue;  // degenerate g, resample h
    }
  }
  throw RetriesExhausted("random_norden: no well-conditioned structure found");
}

NordenStructure random_norden(const GeneratorConfig& cfg) {
  SeededRng rng(cfg.seed);
  return random_norden(rng, cfg);
}

LieAlgebraModel random_nilpotent_algebra(SeededRng& rng, const GeneratorConfig& cfg) {
  const int dim = cfg.dim;
  const int v = cfg.nilpotent_v < 0 ? dim / 2 : cfg.nilpotent_v;
  if (v < 0 || v > dim) throw Error("invalid V-block size");
  std::vector<double> c(static_cast<std::size_t>(dim) * dim * dim, 0.0);
  for (int i = 0; i < v; ++i)
    for (int j = i + 1; j < v; ++j)
      for (int k = v; k < dim; ++k) {
        const double val = rng.uniform(cfg.lo, cfg.hi);
        c[at3(dim, i, j, k)] = val;
        c[at3(dim, j, i, k)] = -val;
      }
  return LieAlgebraModel::validate(dim, std::move(c));
}

LieAlgebraModel random_nilpotent_algebra(const GeneratorConfig& cfg) {
  SeededRng rng(cfg.seed);
  return random_nilpotent_algebra(rng, cfg);
}

std::vector<std::vector<double>> w3_family_basis(const NordenStructure& s, W3Family family) {
  const int dim = s.dim();
  if (family == W3Family::kAuto)
    family = (dim == 4) ? W3Family::kCross : W3Family::kTwoStep;

  std::vector<std::vector<double>> basis;
  if (family == W3Family::kCross) {
    if (dim != 4) throw Error("cross family is dim-4 only");
    // permutation symbol on four indices
    std::array<std::array<std::array<std::array<int, 4>, 4>, 4>, 4> eps{};
    std::array<int, 4> p{0, 1, 2, 3};
    do {
      int sign = 1;
      for (int a = 0; a < 4; ++a)
        for (int b = a + 1; b < 4; ++b)
          if (p[a] > p[b]) sign = -sign;
      eps[p[0]][p[1]][p[2]][p[3]] = sign;
    } while (std::next_permutation(p.begin(), p.end()));

    const double root = std::sqrt(std::abs(s.metric().entries().determinant()));
    for (int w = 0; w < 4; ++w) {
      std::vector<double> c(64, 0.0);
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
          for (int k = 0; k < 4; ++k) {
            double v = 0.0;
            for (int m = 0; m < 4; ++m) v += root * eps[w][i][j][m] * s.ginv(m, k);
            c[at3(4, i, j, k)] = v;
          }
      basis.push_back(std::move(c));
    }
  } else {
    const int v = dim - 1;  // one-dimensional central block
    for (int i = 0; i < v; ++i)
      for (int j = i + 1; j < v; ++j) {
        std::vector<double> c(static_cast<std::size_t>(dim) * dim * dim, 0.0);
        c[at3(dim, i, j, dim - 1)] = 1.0;
        c[at3(dim, j, i, dim - 1)] = -1.0;
        basis.push_back(std::move(c));
      }
  }
  return basis;
}

LieAlgebraModel solve_w3_family(const NordenStructure& s, SeededRng& rng,
                                const GeneratorConfig& cfg) {
  const auto basis = w3_family_basis(s, cfg.family);
  const Eigen::MatrixXd null_basis = constraint_nullspace(basis, s);
  const int k = static_cast<int>(null_basis.cols());
  if (k == 0)
    throw OnlyKahlerSolutions("W3 constraint admits only the abelian solution");

  bool saw_nonzero_nj = false;
  for (int attempt = 0; attempt < cfg.max_retries; ++attempt) {
    Eigen::VectorXd coef(k);
    for (int i = 0; i < k; ++i) coef(i) = rng.uniform(cfg.lo, cfg.hi);
    std::vector<double> c = combine(basis, null_basis * coef);
    normalize_max(c, 1.0);
    double cmax = 0.0;
    for (double x : c) cmax = std::max(cmax, std::abs(x));
    if (cmax < 1e-12) continue;

    LieAlgebraModel model = LieAlgebraModel::validate(s.dim(), std::move(c));
    const double nj = max_nabla_j(model, s);
    if (nj > 1e-12) saw_nonzero_nj = true;
    if (nj <= 1e-3) continue;

    const ClassMembership cls =
        classify(f_tensor(levi_civita(model, s.metric()), s), s);
    if (!cls.is_w3) continue;  // numerically borderline sample
    return model;
  }
  if (!saw_nonzero_nj)
    throw OnlyKahlerSolutions("every solution of the W3 constraint has nabla J = 0");
  throw RetriesExhausted("solve_w3_family: retries exhausted");
}

LieAlgebraModel solve_w3_family(const NordenStructure& s, const GeneratorConfig& cfg) {
  SeededRng rng(cfg.seed);
  return solve_w3_family(s, rng, cfg);
}

std::optional<LieAlgebraModel> search_isotropic_kahler(const NordenStructure& s,
                                                       SeededRng& rng,
                                                       const GeneratorConfig& cfg) {
  const auto basis = w3_family_basis(s, cfg.family);
  const Eigen::MatrixXd null_basis = constraint_nullspace(basis, s);
  const int k = static_cast<int>(null_basis.cols());
  if (k == 0) return std::nullopt;

  auto snorm_at = [&](const Eigen::VectorXd& coef) {
    std::vector<double> c = combine(basis, null_basis * coef);
    LieAlgebraModel model = LieAlgebraModel::validate(s.dim(), std::move(c));
    Connection conn = levi_civita(model, s.metric());
    return square_norm_nabla_J(nabla_J(conn, s), s.metric());
  };

  for (int attempt = 0; attempt < cfg.max_retries * 4; ++attempt) {
    Eigen::VectorXd c1(k), c2(k);
    for (int i = 0; i < k; ++i) c1(i) = rng.uniform(cfg.lo, cfg.hi);
    for (int i = 0; i < k; ++i) c2(i) = rng.uniform(cfg.lo, cfg.hi);
    double s1 = snorm_at(c1), s2 = snorm_at(c2);
    if (s1 == 0.0) std::swap(c1, c2), std::swap(s1, s2);
    if (s1 * s2 >= 0.0) continue;

    // the square norm restricted to the segment is a quadratic in t with a
    // sign change, so bisection converges to a zero
    double a = 0.0, b = 1.0, fa = s1;
    for (int it = 0; it < 120; ++it) {
      const double mid = 0.5 * (a + b);
      const double fm = snorm_at(c1 + mid * (c2 - c1));
      if (fm == 0.0) {
        a = b = mid;
        break;
      }
      if ((fm > 0.0) == (fa > 0.0)) {
        a = mid;
        fa = fm;
      } else {
        b = mid;
      }
    }
    const Eigen::VectorXd cz = c1 + 0.5 * (a + b) * (c2 - c1);
    std::vector<double> c = combine(basis, null_basis * cz);

    // rescale: snorm is homogeneous of degree 2, so zeros survive scaling
    LieAlgebraModel probe = LieAlgebraModel::validate(s.dim(), c);
    const double nj = max_nabla_j(probe, s);
    if (nj < 1e-8) continue;
    for (double& x : c) x *= 0.5 / nj;

    LieAlgebraModel model = LieAlgebraModel::validate(s.dim(), std::move(c));
    Connection conn = levi_civita(model, s.metric());
    const DenseTensor njt = nabla_J(conn, s);
    const double sn = square_norm_nabla_J(njt, s.metric());
    if (std::abs(sn) > 1e-10 || njt.max_abs() <= 0.1) continue;
    const ClassMembership cls = classify(f_tensor(conn, s), s);
    if (!cls.is_w3) continue;
    return model;
  }
  return std::nullopt;
}

std::optional<LieAlgebraModel> search_isotropic_kahler(const NordenStructure& s,
                                                       const GeneratorConfig& cfg) {
  SeededRng rng(cfg.seed);
  return search_isotropic_kahler(s, rng, cfg);
}

}  // namespace norden
