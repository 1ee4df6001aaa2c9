#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "norden/curvature.hpp"
#include "norden/model.hpp"
#include "norden/structure.hpp"

#include <json.hpp>

namespace norden {

inline constexpr const char* kToolName = "nordenlab";
inline constexpr const char* kToolVersion = "1.0.0";
inline constexpr const char* kModelFormat = "norden-model/1";

/// Parsed but not yet validated model file contents. Structure constants are
/// already densified with antisymmetric completion.
struct RawModel {
  int dim = 0;
  std::vector<double> c;  // C^k_{ij} at ((i*dim + j)*dim + k)
  Eigen::MatrixXd metric;
  Eigen::MatrixXd J;
  std::string label;
};

/// A validated model: algebra plus Norden structure.
struct ParsedModel {
  LieAlgebraModel algebra;
  NordenStructure structure;
  std::string label;
};

/// Reads and structurally checks a model file. Throws ParseError for
/// unreadable files, malformed JSON, bad shapes, out-of-range indices or
/// conflicting duplicate entries (same (i,j,k) differing beyond 1e-15).
RawModel read_model(const std::string& path);
RawModel model_from_json(const nlohmann::json& j);

/// Runs the mathematical validation on raw contents. Throws the specific
/// validation error (AntisymmetryViolation, JacobiViolation,
/// NotAlmostComplex, NotNordenCompatible, WrongSignature, DegenerateMetric).
ParsedModel validate_model(const RawModel& raw, const Tolerances& tol = {});

/// Serializes a model. Only entries with i < j and nonzero value are
/// written, ordered lexicographically; numbers round-trip exactly.
nlohmann::ordered_json model_to_json(int dim, const std::vector<double>& c,
                                     const Eigen::MatrixXd& metric,
                                     const Eigen::MatrixXd& J, const std::string& label);
void write_model(const std::string& path, const nlohmann::ordered_json& j);

/// Report fragments. Reports carry every tolerance used and no timestamps
/// or absolute paths, so identical runs produce identical bytes.
nlohmann::ordered_json tool_json();
nlohmann::ordered_json tolerances_json(const Tolerances& tol, double verify_tolerance);
nlohmann::ordered_json classification_json(const ClassMembership& m);
nlohmann::ordered_json verification_json(const VerificationReport& rep);

void write_text(const std::string& path, const std::string& text);

}  // namespace norden
