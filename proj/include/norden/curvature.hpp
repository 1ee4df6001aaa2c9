#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "norden/model.hpp"
#include "norden/rng.hpp"
#include "norden/structure.hpp"
#include "norden/tensor.hpp"

namespace norden {

/// Curvature tensor of the connection in the constant frame, lowered with g:
/// R(i,j,k,l) = g(R(e_i,e_j)e_k, e_l) with
/// R(X,Y)Z = nabla_X nabla_Y Z - nabla_Y nabla_X Z - nabla_{[X,Y]} Z.
DenseTensor curvature_tensor(const Connection& conn, const LieAlgebraModel& model,
                             const MetricMatrix& g);

/// Ricci tensor rho(y,z) = g^{ij} R(e_i,y,z,e_j), its associated tensor
/// rho*(y,z) = g^{ij} R(e_i,y,z,Je_j), and the scalar traces
/// tau = g^{yz} rho(y,z), tau** = g^{ij} g^{kl} R(e_i,e_k,Je_l,Je_j).
struct RicciScalars {
  Eigen::MatrixXd rho;
  Eigen::MatrixXd rho_star;
  double tau = 0.0;
  double tau_star2 = 0.0;
};

RicciScalars ricci_and_scalars(const DenseTensor& r, const NordenStructure& s);

/// Square norm of nabla J: g^{ij} g^{kl} g((nabla_{e_i}J)e_k, (nabla_{e_j}J)e_l).
/// Indefinite: can vanish with nabla J != 0.
double square_norm_nabla_J(const DenseTensor& nj, const MetricMatrix& g);

struct IsotropyFlags {
  bool is_kahler = false;            // max|nabla J| <= eps
  bool is_isotropic_kahler = false;  // |square norm| <= eps
};

IsotropyFlags isotropic_kahler_flags(const DenseTensor& nj, double snorm, double eps);

/// Everything derived from one model: curvature, Ricci data, square norm.
struct CurvatureData {
  DenseTensor R;
  Eigen::MatrixXd rho;
  Eigen::MatrixXd rho_star;
  double tau = 0.0;
  double tau_star2 = 0.0;
  double snorm = 0.0;
};

CurvatureData curvature_data(const Connection& conn, const LieAlgebraModel& model,
                             const NordenStructure& s);

// ---------------------------------------------------------------------------
// Identity checks. Each returns a max-norm residual scaled by the max norm of
// the largest participating tensor (floored at 1), so a tolerance of 1e-8 is
// meaningful across models of different magnitude.
// ---------------------------------------------------------------------------

/// Residuals of the four curvature axioms:
/// antisymmetry in (1,2), antisymmetry in (3,4), pair-exchange symmetry,
/// first Bianchi identity.
std::array<double, 4> curvature_axiom_residuals(const DenseTensor& r);

/// Symmetry residual of rho*, relative.
double rho_star_symmetry_residual(const Eigen::MatrixXd& rho_star);

/// The four curvature/F identities valid on every almost complex manifold
/// with Norden metric (Levi-Civita connection assumed).
std::array<double, 4> theorem1_residuals(const Connection& conn, const NordenStructure& s,
                                         const DenseTensor& f, const DenseTensor& r);

/// Requires residual_w3 <= eps_class (throws NotW3 otherwise).
std::array<double, 4> prop_w3_residuals(const Connection& conn, const NordenStructure& s,
                                        const DenseTensor& f, const ClassMembership& cls);

/// 12-term curvature identity with the cyclic nabla-J right side.
double identity12_residual(const DenseTensor& r, const DenseTensor& nj,
                           const NordenStructure& s, const ClassMembership& cls);

/// (i) the rho/rho* relation, (ii) the twisted-trace expression of the
/// square norm.
std::array<double, 2> lemma_residuals(const Eigen::MatrixXd& rho,
                                      const Eigen::MatrixXd& rho_star, const DenseTensor& nj,
                                      double snorm, const NordenStructure& s,
                                      const ClassMembership& cls);

/// |snorm + 2 (tau + tau**)|, relative.
double norm_theorem_residual(double snorm, double tau, double tau_star2,
                             const ClassMembership& cls);

struct KahlerPropertyResult {
  double residual = 0.0;            // max |R(X,Y,JZ,JU) + R(X,Y,Z,U)|, relative
  bool implies_isotropic = false;   // residual <= tol
  double polarized_residual = 0.0;  // g((nab_x J)z,(nab_y J)u) + g((nab_x J)u,(nab_y J)z)
};

KahlerPropertyResult check_kahler_curvature_property(const DenseTensor& r,
                                                     const NordenStructure& s,
                                                     const DenseTensor& nj,
                                                     double tol = 1e-8);

/// Holomorphic bisectional curvature h(x,y) = -R(x,Jx,y,Jy) / (sqrt(Dx) sqrt(Dy)),
/// Dx = g(x,x)^2 + g(x,Jx)^2. Throws IsotropicPlane if either plane is
/// strongly isotropic (D <= eps_iso^2).
double bisectional_curvature(const DenseTensor& r, const NordenStructure& s,
                             const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                             double eps_iso = 1e-8);

/// A vector on the intersection of the null cones of g and the associated
/// metric: g(x,x) = g(x,Jx) = 0 up to round-off. Its holomorphic 2-plane
/// {x, Jx} is strongly isotropic.
Eigen::VectorXd strongly_isotropic_vector(const NordenStructure& s, SeededRng& rng);

struct Theorem21Result {
  int violations = 0;
  int samples = 0;
  double max_null_cone_residual = 0.0;  // max |R(x,Jx,y,Jy)| over null-cone x
  int null_cone_samples = 0;
};

/// Tests, over random vector pairs, the equivalence
///   R(x,Jx,y,Jy) = 0  <=>  x-plane strongly isotropic
///                          or y-plane strongly isotropic
///                          or h defined and |h| <= tol_h,
/// under tolerance bands (|R| <= tol_r counts as zero). Also samples
/// strongly isotropic x from the null cone and records max |R(x,Jx,y,Jy)|.
Theorem21Result check_theorem21(const DenseTensor& r, const NordenStructure& s,
                                const ClassMembership& cls, int samples, SeededRng& rng,
                                double tol_r = 1e-8, double tol_h = 1e-8,
                                double eps_iso = 1e-8, int null_cone_samples = 50);

struct Theorem22Result {
  bool consistent = true;
  double max_polarized = 0.0;  // max |R(v,Jv,w,Jw)| over the polarization set
};

/// Full polarization of R(x,Jx,y,Jy) over basis vectors and pair sums
/// e_a + e_b, which determine the multilinear form exactly. If the maximum
/// is <= tol then |snorm| <= tol must hold; contrapositive: |snorm| > tol
/// forces a nonzero polarized component.
Theorem22Result check_theorem22(const DenseTensor& r, const NordenStructure& s,
                                double snorm, const ClassMembership& cls, double tol = 1e-8);

// ---------------------------------------------------------------------------
// Aggregated verification
// ---------------------------------------------------------------------------

struct CheckResult {
  std::string name;
  double residual = 0.0;
  bool pass = true;
  bool skipped = false;
};

struct VerifyOptions {
  double tolerance = 1e-8;
  int theorem21_samples = 500;
  int theorem21_null_cone_samples = 50;
  std::uint64_t seed = 0;
  /// Debug hook: added to Gamma^0_{01} after the Levi-Civita construction,
  /// breaking torsion-freeness downstream. 0 disables.
  double gamma_perturbation = 0.0;
};

struct VerificationReport {
  double tolerance = 1e-8;
  double torsion = 0.0;
  double metricity = 0.0;
  double jacobi = 0.0;
  ClassMembership classification;
  double tau = 0.0, tau_star2 = 0.0, snorm = 0.0, max_nabla_j = 0.0;
  IsotropyFlags isotropy;
  std::vector<CheckResult> checks;
  int theorem21_violations = 0;
  int theorem21_samples = 0;
  double theorem21_null_cone_residual = 0.0;
  bool theorem22_consistent = true;
  double theorem22_max_polarized = 0.0;

  bool pass() const;
};

/// Runs the whole identity suite on one model. W3-conditional checks are
/// marked skipped (not failed) when the model does not classify as W3.
VerificationReport run_verification(const LieAlgebraModel& model, const NordenStructure& s,
                                    const VerifyOptions& opts = {});

}  // namespace norden
