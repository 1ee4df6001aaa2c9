#include "norden/tensor.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>

namespace norden {

namespace {

std::size_t ipow(std::size_t base, int exp) {
  std::size_t r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

}  // namespace

DenseTensor::DenseTensor(int dim, int rank) : dim_(dim), rank_(rank) {
  if (dim < 2 || dim % 2 != 0) throw Error("tensor dimension must be even and >= 2");
  if (rank < 0) throw Error("tensor rank must be non-negative");
  data_.assign(ipow(static_cast<std::size_t>(dim), rank), 0.0);
}

double DenseTensor::max_abs() const {
  double m = 0.0;
  for (double v : data_) m = std::max(m, std::abs(v));
  return m;
}

DenseTensor& DenseTensor::operator+=(const DenseTensor& other) {
  if (other.dim_ != dim_ || other.rank_ != rank_) throw Error("tensor shape mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

DenseTensor& DenseTensor::operator-=(const DenseTensor& other) {
  if (other.dim_ != dim_ || other.rank_ != rank_) throw Error("tensor shape mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

DenseTensor& DenseTensor::operator*=(double s) {
  for (double& v : data_) v *= s;
  return *this;
}

Eigen::MatrixXd metric_inverse(const Eigen::MatrixXd& g, double eps_deg, double eps_lin) {
  if (g.rows() != g.cols()) throw Error("metric must be square");
  const Eigen::Index n = g.rows();
  Eigen::FullPivLU<Eigen::MatrixXd> lu(g);
  if (std::abs(lu.determinant()) <= eps_deg)
    throw DegenerateMetric("metric is degenerate: |det g| = " +
                           std::to_string(std::abs(lu.determinant())));
  Eigen::MatrixXd inv = lu.inverse();
  const double res = (g * inv - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff();
  if (res > eps_lin)
    throw DegenerateMetric("metric inversion residual " + std::to_string(res) +
                           " exceeds tolerance");
  return inv;
}

std::pair<int, int> signature(const Eigen::MatrixXd& g, double eps_deg) {
  if (g.rows() != g.cols()) throw Error("metric must be square");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(g, Eigen::EigenvaluesOnly);
  int pos = 0, neg = 0;
  for (Eigen::Index i = 0; i < g.rows(); ++i) {
    const double ev = es.eigenvalues()(i);
    if (std::abs(ev) <= eps_deg)
      throw DegenerateMetric("eigenvalue " + std::to_string(ev) +
                             " within degeneracy tolerance");
    (ev > 0 ? pos : neg)++;
  }
  return {pos, neg};
}

MetricMatrix::MetricMatrix(Eigen::MatrixXd entries, const Tolerances& tol) {
  if (entries.rows() != entries.cols()) throw Error("metric must be square");
  const int dim = static_cast<int>(entries.rows());
  if (dim < 2 || dim % 2 != 0) throw Error("metric dimension must be even and >= 2");
  const double asym = (entries - entries.transpose()).cwiseAbs().maxCoeff();
  if (asym > tol.lin)
    throw Error("metric is not symmetric: asymmetry " + std::to_string(asym));
  entries_ = 0.5 * (entries + entries.transpose());
  inverse_ = metric_inverse(entries_, tol.degenerate, tol.lin);
  const auto [pos, neg] = signature(entries_, tol.degenerate);
  if (pos != dim / 2 || neg != dim / 2)
    throw WrongSignature("metric signature (" + std::to_string(pos) + "," +
                         std::to_string(neg) + "), expected (" + std::to_string(dim / 2) +
                         "," + std::to_string(dim / 2) + ")");
}

namespace {

struct ResolvedPair {
  int first;
  int second;
  const Eigen::MatrixXd* weight;
};

DenseTensor contract_impl(const DenseTensor& t, std::span<const ResolvedPair> pairs) {
  const int dim = t.dim();
  const int rank = t.rank();

  std::vector<bool> bound(rank, false);
  for (const auto& p : pairs) {
    if (p.first < 0 || p.first >= rank || p.second < 0 || p.second >= rank ||
        p.first == p.second || bound[p.first] || bound[p.second])
      throw SlotOutOfRange("contraction slots must be distinct and within rank " +
                           std::to_string(rank));
    if (p.weight->rows() != dim || p.weight->cols() != dim)
      throw Error("weight dimension mismatch");
    bound[p.first] = bound[p.second] = true;
  }

  std::vector<int> free_slots;
  for (int s = 0; s < rank; ++s)
    if (!bound[s]) free_slots.push_back(s);

  const int out_rank = static_cast<int>(free_slots.size());
  DenseTensor out(dim, out_rank);

  std::vector<int> idx(rank, 0);
  const std::size_t n_out = out.size();
  const std::size_t n_pairs = pairs.size();

  for (std::size_t o = 0; o < n_out; ++o) {
    // decode output multi-index
    std::size_t rem = o;
    for (int s = out_rank - 1; s >= 0; --s) {
      idx[free_slots[s]] = static_cast<int>(rem % dim);
      rem /= dim;
    }

    // odometer over the bound index assignments
    std::vector<int> b(2 * n_pairs, 0);
    double sum = 0.0;
    while (true) {
      double w = 1.0;
      for (std::size_t p = 0; p < n_pairs; ++p) {
        const int a = b[2 * p], c = b[2 * p + 1];
        idx[pairs[p].first] = a;
        idx[pairs[p].second] = c;
        w *= (*pairs[p].weight)(a, c);
      }
      std::size_t off = 0;
      for (int s = 0; s < rank; ++s) off = off * dim + static_cast<std::size_t>(idx[s]);
      sum += w * t.data()[off];

      std::size_t d = 0;
      for (; d < b.size(); ++d) {
        if (++b[d] < dim) break;
        b[d] = 0;
      }
      if (d == b.size() || b.empty()) break;
    }
    out.data()[o] = sum;
  }
  return out;
}

}  // namespace

DenseTensor contract(const DenseTensor& t, const MetricMatrix& g,
                     std::span<const SlotPair> pairs) {
  if (g.dim() != t.dim()) throw Error("weight dimension mismatch");
  std::vector<ResolvedPair> resolved;
  resolved.reserve(pairs.size());
  for (const auto& p : pairs)
    resolved.push_back({p.first, p.second,
                        p.weight == Weight::kMetric ? &g.entries() : &g.inverse()});
  return contract_impl(t, resolved);
}

DenseTensor contract(const DenseTensor& t, const Eigen::MatrixXd& weight,
                     std::span<const std::pair<int, int>> pairs) {
  std::vector<ResolvedPair> resolved;
  resolved.reserve(pairs.size());
  for (const auto& p : pairs) resolved.push_back({p.first, p.second, &weight});
  return contract_impl(t, resolved);
}

}  // namespace norden
