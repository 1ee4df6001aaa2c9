#include "norden/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace norden {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

inline std::size_t at3(int dim, int i, int j, int k) {
  return (static_cast<std::size_t>(i) * dim + j) * dim + k;
}

Eigen::MatrixXd parse_matrix(const json& j, int dim, const char* name) {
  if (!j.is_array() || static_cast<int>(j.size()) != dim)
    throw ParseError(std::string(name) + " must be a " + std::to_string(dim) + "x" +
                     std::to_string(dim) + " array");
  Eigen::MatrixXd m(dim, dim);
  for (int r = 0; r < dim; ++r) {
    const auto& row = j[r];
    if (!row.is_array() || static_cast<int>(row.size()) != dim)
      throw ParseError(std::string(name) + " row " + std::to_string(r) + " has wrong length");
    for (int c = 0; c < dim; ++c) {
      if (!row[c].is_number())
        throw ParseError(std::string(name) + " entry is not a number");
      m(r, c) = row[c].get<double>();
    }
  }
  return m;
}

json matrix_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

RawModel model_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("model file must contain a JSON object");
  for (const char* key : {"dim", "structure_constants", "metric", "J"})
    if (!j.contains(key)) throw ParseError(std::string("missing key: ") + key);

  RawModel raw;
  if (!j["dim"].is_number_integer()) throw ParseError("dim must be an integer");
  raw.dim = j["dim"].get<int>();
  if (raw.dim < 2 || raw.dim % 2 != 0) throw ParseError("dim must be even and >= 2");
  const int dim = raw.dim;

  raw.c.assign(static_cast<std::size_t>(dim) * dim * dim, 0.0);
  std::vector<bool> seen(raw.c.size(), false);
  const auto& entries = j["structure_constants"];
  if (!entries.is_array()) throw ParseError("structure_constants must be an array");
  auto put = [&](int i, int jj, int k, double v) {
    const std::size_t off = at3(dim, i, jj, k);
    if (seen[off] && std::abs(raw.c[off] - v) > 1e-15)
      throw ParseError("conflicting duplicate structure constant at (" + std::to_string(i) +
                       "," + std::to_string(jj) + "," + std::to_string(k) + ")");
    raw.c[off] = v;
    seen[off] = true;
  };
  for (const auto& e : entries) {
    if (!e.is_array() || e.size() != 4 || !e[0].is_number_integer() ||
        !e[1].is_number_integer() || !e[2].is_number_integer() || !e[3].is_number())
      throw ParseError("structure constant records must be [i, j, k, value]");
    const int i = e[0].get<int>(), jj = e[1].get<int>(), k = e[2].get<int>();
    if (i < 0 || i >= dim || jj < 0 || jj >= dim || k < 0 || k >= dim)
      throw ParseError("structure constant index out of range");
    const double v = e[3].get<double>();
    put(i, jj, k, v);
    put(jj, i, k, -v);  // antisymmetric completion
  }

  raw.metric = parse_matrix(j["metric"], dim, "metric");
  raw.J = parse_matrix(j["J"], dim, "J");
  if (j.contains("label")) {
    if (!j["label"].is_string()) throw ParseError("label must be a string");
    raw.label = j["label"].get<std::string>();
  }
  return raw;
}

RawModel read_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ParseError("invalid JSON in " + path + ": " + e.what());
  }
  return model_from_json(j);
}

ParsedModel validate_model(const RawModel& raw, const Tolerances& tol) {
  LieAlgebraModel algebra = LieAlgebraModel::validate(raw.dim, raw.c, tol.jacobi);
  NordenStructure structure = NordenStructure::validate(raw.J, raw.metric, tol);
  return ParsedModel{std::move(algebra), std::move(structure), raw.label};
}

ordered_json model_to_json(int dim, const std::vector<double>& c,
                           const Eigen::MatrixXd& metric, const Eigen::MatrixXd& J,
                           const std::string& label) {
  ordered_json out;
  out["format"] = kModelFormat;
  if (!label.empty()) out["label"] = label;
  out["dim"] = dim;
  json entries = json::array();
  for (int i = 0; i < dim; ++i)
    for (int j = i + 1; j < dim; ++j)
      for (int k = 0; k < dim; ++k) {
        const double v = c[at3(dim, i, j, k)];
        if (v != 0.0) entries.push_back(json::array({i, j, k, v}));
      }
  out["structure_constants"] = std::move(entries);
  out["metric"] = matrix_json(metric);
  out["J"] = matrix_json(J);
  return out;
}

void write_model(const std::string& path, const ordered_json& j) {
  write_text(path, j.dump(2) + "\n");
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot write " + path);
  out << text;
  if (!out) throw ParseError("write failed: " + path);
}

ordered_json tool_json() {
  ordered_json t;
  t["name"] = kToolName;
  t["version"] = kToolVersion;
  return t;
}

ordered_json tolerances_json(const Tolerances& tol, double verify_tolerance) {
  ordered_json t;
  t["linear"] = tol.lin;
  t["degenerate"] = tol.degenerate;
  t["jacobi"] = tol.jacobi;
  t["class"] = tol.cls;
  t["isotropic"] = tol.iso;
  t["verify"] = verify_tolerance;
  return t;
}

ordered_json classification_json(const ClassMembership& m) {
  ordered_json c;
  c["eps_class"] = m.eps_class;
  c["residual_w0"] = m.residual_w0;
  c["residual_w1"] = m.residual_w1;
  c["residual_w2"] = m.residual_w2;
  c["residual_w3"] = m.residual_w3;
  c["theta_norm"] = m.theta_norm;
  c["is_w0"] = m.is_w0;
  c["is_w1"] = m.is_w1;
  c["is_w2"] = m.is_w2;
  c["is_w3"] = m.is_w3;
  return c;
}

ordered_json verification_json(const VerificationReport& rep) {
  ordered_json v;
  v["tolerance"] = rep.tolerance;
  v["connection"] = {{"torsion", rep.torsion}, {"metricity", rep.metricity},
                     {"jacobi", rep.jacobi}};
  v["classification"] = classification_json(rep.classification);
  ordered_json inv;
  inv["tau"] = rep.tau;
  inv["tau_star_star"] = rep.tau_star2;
  inv["snorm_nabla_j"] = rep.snorm;
  inv["max_nabla_j"] = rep.max_nabla_j;
  inv["is_kahler"] = rep.isotropy.is_kahler;
  inv["is_isotropic_kahler"] = rep.isotropy.is_isotropic_kahler;
  v["invariants"] = std::move(inv);

  ordered_json checks = ordered_json::array();
  ordered_json failed = ordered_json::array();
  ordered_json skipped = ordered_json::array();
  for (const auto& c : rep.checks) {
    ordered_json e;
    e["name"] = c.name;
    if (c.skipped) {
      e["skipped"] = true;
    } else {
      // theorem21 counts violations and theorem22 reports the largest
      // polarized component; both are detailed in their own blocks below
      if (c.name == "theorem21")
        e["violations"] = static_cast<int>(c.residual);
      else if (c.name == "theorem22")
        e["max_polarized"] = c.residual;
      else
        e["residual"] = c.residual;
      e["pass"] = c.pass;
      if (!c.pass) failed.push_back(c.name);
    }
    if (c.skipped) skipped.push_back(c.name);
    checks.push_back(std::move(e));
  }
  v["checks"] = std::move(checks);

  ordered_json t21;
  t21["violations"] = rep.theorem21_violations;
  t21["samples"] = rep.theorem21_samples;
  t21["null_cone_max_residual"] = rep.theorem21_null_cone_residual;
  v["theorem21"] = std::move(t21);
  ordered_json t22;
  t22["consistent"] = rep.theorem22_consistent;
  t22["max_polarized"] = rep.theorem22_max_polarized;
  v["theorem22"] = std::move(t22);

  ordered_json summary;
  summary["pass"] = rep.pass();
  summary["failed"] = std::move(failed);
  summary["skipped"] = std::move(skipped);
  v["summary"] = std::move(summary);
  return v;
}

}  // namespace norden
