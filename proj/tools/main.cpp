// nordenlab: build, validate, classify and verify homogeneous models of
// almost complex manifolds with Norden metric.

#include <CLI11.hpp>
#include <iostream>
#include <optional>
#include <string>

#include "norden/generator.hpp"
#include "norden/io.hpp"

namespace {

using nlohmann::ordered_json;

void emit(const ordered_json& report, const std::string& output_path) {
  const std::string text = report.dump(2) + "\n";
  if (!output_path.empty()) norden::write_text(output_path, text);
  std::cout << text;
}

struct CommonOpts {
  std::string input;
  std::string output;
  double tolerance = 1e-8;
};

norden::ParsedModel load_validated(const std::string& path) {
  return norden::validate_model(norden::read_model(path));
}

int cmd_validate(const CommonOpts& o) {
  norden::Tolerances tol;
  norden::ParsedModel m = load_validated(o.input);
  norden::Connection conn = norden::levi_civita(m.algebra, m.structure.metric());
  const double torsion = norden::torsion_residual(conn, m.algebra);
  const double metricity = norden::metricity_residual(conn, m.structure.metric());
  const double jacobi =
      norden::LieAlgebraModel::jacobi_residual(m.algebra.dim(), m.algebra.coefficients());
  const bool pass = torsion <= tol.lin && metricity <= tol.lin;

  ordered_json rep;
  rep["tool"] = norden::tool_json();
  rep["command"] = "validate";
  rep["model"] = {{"label", m.label}, {"dim", m.algebra.dim()}};
  rep["tolerances"] = norden::tolerances_json(tol, o.tolerance);
  rep["connection"] = {{"torsion", torsion}, {"metricity", metricity}, {"jacobi", jacobi}};
  rep["summary"] = {{"pass", pass}};
  emit(rep, o.output);
  return pass ? 0 : 1;
}

int cmd_classify(const CommonOpts& o) {
  norden::Tolerances tol;
  norden::ParsedModel m = load_validated(o.input);
  norden::Connection conn = norden::levi_civita(m.algebra, m.structure.metric());
  const norden::DenseTensor f = norden::f_tensor(conn, m.structure);
  const norden::ClassMembership cls = norden::classify(f, m.structure, o.tolerance);

  ordered_json rep;
  rep["tool"] = norden::tool_json();
  rep["command"] = "classify";
  rep["model"] = {{"label", m.label}, {"dim", m.algebra.dim()}};
  rep["tolerances"] = norden::tolerances_json(tol, o.tolerance);
  rep["classification"] = norden::classification_json(cls);
  emit(rep, o.output);
  return 0;
}

int cmd_invariants(const CommonOpts& o) {
  norden::Tolerances tol;
  norden::ParsedModel m = load_validated(o.input);
  norden::Connection conn = norden::levi_civita(m.algebra, m.structure.metric());
  const norden::DenseTensor nj = norden::nabla_J(conn, m.structure);
  const norden::DenseTensor f = norden::lower_nabla_J(nj, m.structure.metric());
  const norden::CurvatureData cd = norden::curvature_data(conn, m.algebra, m.structure);
  const norden::ClassMembership cls = norden::classify(f, m.structure, o.tolerance);
  const norden::IsotropyFlags flags =
      norden::isotropic_kahler_flags(nj, cd.snorm, o.tolerance);

  ordered_json rep;
  rep["tool"] = norden::tool_json();
  rep["command"] = "invariants";
  rep["model"] = {{"label", m.label}, {"dim", m.algebra.dim()}};
  rep["tolerances"] = norden::tolerances_json(tol, o.tolerance);
  ordered_json inv;
  inv["tau"] = cd.tau;
  inv["tau_star_star"] = cd.tau_star2;
  inv["snorm_nabla_j"] = cd.snorm;
  inv["max_nabla_j"] = nj.max_abs();
  inv["is_kahler"] = flags.is_kahler;
  inv["is_isotropic_kahler"] = flags.is_isotropic_kahler;
  {
    ordered_json rho = ordered_json::array(), rho_star = ordered_json::array();
    for (int r = 0; r < m.algebra.dim(); ++r) {
      ordered_json row1 = ordered_json::array(), row2 = ordered_json::array();
      for (int c = 0; c < m.algebra.dim(); ++c) {
        row1.push_back(cd.rho(r, c));
        row2.push_back(cd.rho_star(r, c));
      }
      rho.push_back(std::move(row1));
      rho_star.push_back(std::move(row2));
    }
    inv["rho"] = std::move(rho);
    inv["rho_star"] = std::move(rho_star);
  }
  rep["invariants"] = std::move(inv);
  rep["classification"] = norden::classification_json(cls);
  if (cls.is_w3) {
    const double res =
        norden::norm_theorem_residual(cd.snorm, cd.tau, cd.tau_star2, cls);
    rep["norm_theorem"] = {{"residual", res}, {"pass", res <= o.tolerance}};
  } else {
    rep["norm_theorem"] = {{"skipped", true}};
  }
  emit(rep, o.output);
  return 0;
}

int cmd_verify(const CommonOpts& o, int samples, std::uint64_t seed,
               double perturb_gamma) {
  norden::Tolerances tol;
  norden::ParsedModel m = load_validated(o.input);
  norden::VerifyOptions opts;
  opts.tolerance = o.tolerance;
  opts.theorem21_samples = samples;
  opts.seed = seed;
  opts.gamma_perturbation = perturb_gamma;
  const norden::VerificationReport rep = norden::run_verification(m.algebra, m.structure, opts);

  ordered_json out;
  out["tool"] = norden::tool_json();
  out["command"] = "verify";
  out["model"] = {{"label", m.label}, {"dim", m.algebra.dim()}};
  out["config"] = {{"samples", samples}, {"seed", seed}};
  out["tolerances"] = norden::tolerances_json(tol, o.tolerance);
  out["verification"] = norden::verification_json(rep);
  emit(out, o.output);
  return rep.pass() ? 0 : 1;
}

int cmd_generate(int dim, std::uint64_t seed, const std::string& kind,
                 const std::string& output) {
  norden::GeneratorConfig cfg;
  cfg.dim = dim;
  cfg.seed = seed;
  norden::SeededRng rng(seed);

  std::vector<double> c(static_cast<std::size_t>(dim) * dim * dim, 0.0);
  std::optional<norden::NordenStructure> s;
  const std::string label = kind + "-dim" + std::to_string(dim) + "-seed" +
                            std::to_string(seed);

  if (kind == "kahler") {
    s = norden::canonical_norden(dim);
  } else if (kind == "random") {
    s = norden::random_norden(rng, cfg);
    c = norden::random_nilpotent_algebra(rng, cfg).coefficients();
  } else if (kind == "w3") {
    s = norden::random_norden(rng, cfg);
    c = norden::solve_w3_family(*s, rng, cfg).coefficients();
  } else if (kind == "isotropic-w3") {
    s = norden::random_norden(rng, cfg);
    auto found = norden::search_isotropic_kahler(*s, rng, cfg);
    if (!found) {
      std::cerr << "no isotropic Kahler model found in the solution space (seed "
                << seed << ")\n";
      return 3;
    }
    c = found->coefficients();
  } else {
    throw norden::ParseError("unknown kind: " + kind);
  }

  const ordered_json file =
      norden::model_to_json(dim, c, s->metric().entries(), s->J(), label);
  norden::write_model(output, file);

  ordered_json rep;
  rep["tool"] = norden::tool_json();
  rep["command"] = "generate";
  rep["config"] = {{"kind", kind}, {"dim", dim}, {"seed", seed}};
  rep["label"] = label;
  std::cout << rep.dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"homogeneous models of almost complex manifolds with Norden metric"};
  app.require_subcommand(1);

  CommonOpts vo, co, io_, eo;
  int samples = 500;
  std::uint64_t vseed = 0;
  double perturb = 0.0;

  auto add_common = [](CLI::App* sub, CommonOpts& o, bool with_tol = true) {
    sub->add_option("--input", o.input, "model file to read")->required();
    sub->add_option("--output", o.output, "also write the report to this path");
    if (with_tol) sub->add_option("--tolerance", o.tolerance, "residual tolerance");
  };

  CLI::App* validate = app.add_subcommand("validate", "check model invariants");
  add_common(validate, vo);
  CLI::App* classify = app.add_subcommand("classify", "class membership W0..W3");
  add_common(classify, co);
  CLI::App* invariants = app.add_subcommand("invariants", "curvature invariants");
  add_common(invariants, io_);
  CLI::App* verify = app.add_subcommand("verify", "run the full identity suite");
  add_common(verify, eo);
  verify->add_option("--samples", samples, "random vector pairs for the curvature sweep");
  verify->add_option("--seed", vseed, "seed for the sampling sweeps");
  verify->add_option("--debug-perturb-gamma", perturb,
                     "debug: corrupt one connection coefficient by this amount")
      ->group("");  // hidden

  int gdim = 4;
  std::uint64_t gseed = 0;
  std::string kind = "w3", goutput;
  CLI::App* generate = app.add_subcommand("generate", "write a model file");
  generate->add_option("--dim", gdim, "model dimension (even, 4..8)");
  generate->add_option("--seed", gseed, "generator seed");
  generate->add_option("--kind", kind, "kahler | random | w3 | isotropic-w3");
  generate->add_option("--output", goutput, "where to write the model")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (validate->parsed()) return cmd_validate(vo);
    if (classify->parsed()) return cmd_classify(co);
    if (invariants->parsed()) return cmd_invariants(io_);
    if (verify->parsed()) return cmd_verify(eo, samples, vseed, perturb);
    if (generate->parsed()) return cmd_generate(gdim, gseed, kind, goutput);
  } catch (const norden::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const norden::OnlyKahlerSolutions& e) {
    std::cerr << "generator: " << e.what() << "\n";
    return 3;
  } catch (const norden::RetriesExhausted& e) {
    std::cerr << "generator: " << e.what() << "\n";
    return 3;
  } catch (const norden::Error& e) {
    std::cerr << "validation failed: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
