#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "norden/curvature.hpp"
#include "norden/model.hpp"
#include "norden/rng.hpp"
#include "norden/structure.hpp"

namespace norden {

/// Linear family the quasi-Kahler solver works over. Both have the Jacobi
/// identity built in, so the W3 condition stays a pure linear-algebra
/// problem.
///  - kTwoStep: brackets [V,V] in a central block Z, everything with Z zero.
///    Empty at dim 4 (no nonzero solutions for any Norden structure); use
///    kCross there.
///  - kCross: dim-4 brackets [x,y] = *(w ^ x ^ y) from a direction w, the
///    Hodge dual taken with the model metric. g([x,y],z) is then totally
///    antisymmetric, which makes every Norden structure over g quasi-Kahler.
enum class W3Family { kAuto, kTwoStep, kCross };

struct GeneratorConfig {
  int dim = 4;                  // 4, 6 or 8
  std::uint64_t seed = 0;
  int max_retries = 64;
  double lo = -1.0, hi = 1.0;   // component range for sampled entries
  int nilpotent_v = -1;         // V-block size; -1 means dim/2
  W3Family family = W3Family::kAuto;
};

/// Canonical pair: J0 e_a = e_{n+a}, J0 e_{n+a} = -e_a; g0 = diag(I_n, -I_n).
NordenStructure canonical_norden(int dim);

/// Conjugation + antisymmetrization construction: J = P J0 P^-1 and
/// g = h - J^T h J, which is automatically Norden-compatible with J.
NordenStructure norden_from_conjugation(const Eigen::MatrixXd& P, const Eigen::MatrixXd& h,
                                        const Tolerances& tol = {});

/// Random valid Norden structure. P is resampled until well-conditioned and
/// |det P| > 0.1; h until g is safely nondegenerate.
NordenStructure random_norden(SeededRng& rng, const GeneratorConfig& cfg);
NordenStructure random_norden(const GeneratorConfig& cfg);

/// Random 2-step nilpotent algebra: basis split V + Z, [V,V] in Z, brackets
/// with Z zero. Jacobi holds identically.
LieAlgebraModel random_nilpotent_algebra(SeededRng& rng, const GeneratorConfig& cfg);
LieAlgebraModel random_nilpotent_algebra(const GeneratorConfig& cfg);

/// Structure-constant basis of the solver family (each element antisymmetric
/// and Jacobi-exact).
std::vector<std::vector<double>> w3_family_basis(const NordenStructure& s, W3Family family);

/// Solves the linear system "cyclic sum of F vanishes" over the family,
/// samples the nullspace (rank-revealing SVD, singular values below
/// 1e-10 * largest treated as zero), and returns a model that classifies as
/// W3 with nabla J != 0. Throws OnlyKahlerSolutions if the solution space
/// forces nabla J = 0, RetriesExhausted otherwise.
LieAlgebraModel solve_w3_family(const NordenStructure& s, SeededRng& rng,
                                const GeneratorConfig& cfg);
LieAlgebraModel solve_w3_family(const NordenStructure& s, const GeneratorConfig& cfg);

/// Best-effort search for an isotropic-Kahler, non-Kahler model: the square
/// norm of nabla J is a quadratic form on the solution space, so a pair of
/// samples with opposite signs brackets a zero along the connecting segment.
/// Returns a model with |snorm| <= 1e-10 and max|nabla J| = 0.5, or nullopt.
std::optional<LieAlgebraModel> search_isotropic_kahler(const NordenStructure& s,
                                                       SeededRng& rng,
                                                       const GeneratorConfig& cfg);
std::optional<LieAlgebraModel> search_isotropic_kahler(const NordenStructure& s,
                                                       const GeneratorConfig& cfg);

}  // namespace norden
