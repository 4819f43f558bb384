#include "hardy/cli_commands.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <random>

#include "CLI11.hpp"
#include "hardy/fixtures.hpp"
#include "hardy/hayashi.hpp"
#include "hardy/inner_outer.hpp"
#include "hardy/nearly_invariant.hpp"
#include "hardy/symbol_json.hpp"

namespace hardy::cli {

using nlohmann::json;
namespace fx = hardy::fixtures;
namespace fs = std::filesystem;

namespace {

struct Named {
  std::string name;
  MatrixSymbol value;
};

ToleranceConfig half_config(const ToleranceConfig& tol) {
  ToleranceConfig h = tol;
  h.trunc_degree = tol.trunc_degree / 2;
  h.ladder.clear();
  for (int n : tol.ladder)
    if (n <= h.trunc_degree) h.ladder.push_back(n);
  if (h.ladder.empty()) h.ladder.push_back(h.trunc_degree);
  return h;
}

void emit(const RunConfig& rc, std::ostream& out, const json& j, const std::string& summary) {
  if (!rc.out.empty()) write_json_file(rc.out, j);
  if (rc.json || rc.out.empty())
    out << j.dump(2) << "\n";
  else
    out << summary << "\n";
}

std::string stem(const std::string& path) { return fs::path(path).stem().string(); }

void need_inputs(const RunConfig& rc, size_t n, const char* what) {
  if (rc.inputs.size() != n) throw PreconditionError(std::string(rc.command) + " expects " + what);
}

int grid_for(int n, const ToleranceConfig& tol) { return admissible_grid(n, tol.grid_size); }

std::vector<Named> inputs_or(const RunConfig& rc, std::vector<Named> fallback) {
  if (rc.inputs.empty()) return fallback;
  std::vector<Named> out;
  for (const auto& p : rc.inputs) out.push_back({stem(p), read_symbol_file(p)});
  return out;
}

std::vector<Named> pair_fixtures(const RunConfig& rc) {
  std::vector<Named> out;
  for (auto& f : fx::pair_bs()) out.push_back({f.name, f.value});
  return inputs_or(rc, out);
}

double thm34_residual(const MatrixSymbol& g, int n) {
  const auto gn = normalize_columns(g.window(0, std::min(g.max_deg(), n)));
  const auto b = sarason_B(gn, n).b;
  const Index r = gn.cols();
  const auto x = OperatorExpr::toeplitz(MatrixSymbol::identity(r) - b) * OperatorExpr::toeplitz(adjoint_flip(gn));
  const auto lhs = x * x.adjoint();
  const auto rhs = OperatorExpr::identity(r) - OperatorExpr::toeplitz(b) * OperatorExpr::toeplitz(adjoint_flip(b));
  return operator_residual(lhs, rhs, n);
}

json counterexample_json() {
  const auto z = fx::z_power(1);
  const auto c = [](cplx v) { return MatrixSymbol::scalar({v}); };
  return {{"b1=1/2,b2=0", counterexample_UBU(z, c(0.5), c(0.0))},
          {"b1=0,b2=0", counterexample_UBU(z, c(0.0), c(0.0))},
          {"b1=z/2,b2=0", counterexample_UBU(z, MatrixSymbol::scalar({0.0, 0.5}), c(0.0))}};
}

}  // namespace

void validate(const RunConfig& rc) {
  rc.tol.validate();
  const auto& l = rc.tol.ladder;
  if (l.size() < 2) throw PreconditionError("ladder needs at least two N values");
  for (size_t i = 1; i < l.size(); ++i)
    if (l[i] <= l[i - 1]) throw PreconditionError("ladder must be strictly increasing");
  if (l.front() < 1) throw PreconditionError("ladder values must be positive");
  if (l.back() > rc.tol.trunc_degree) throw PreconditionError("ladder exceeds the truncation degree");
}

int cmd_examples(const RunConfig& rc, std::ostream& out) {
  const ToleranceConfig& tol = rc.tol;
  const int n = tol.trunc_degree;
  json bundle;
  std::vector<std::string> lines;

  {
    const auto g = normalize_columns(fx::example1_g(n));
    const auto f = SubspaceBasis::span_of({HardyElement::from_symbol(g, 0), HardyElement::from_symbol(g, 1)}, n);
    const auto w = extract_W(f);
    const auto s = sarason_B(g, n);
    bundle["example1"] = {{"nearly_invariant", is_nearly_invariant(f).invariant},
                          {"r", w.r},
                          {"F0_defect", s.herglotz.f0_defect}};
    lines.push_back("example1: nearly invariant, r = " + std::to_string(w.r));
  }
  {
    const auto rep = classify_kernel(fx::example2_g(), fx::z_power(1, 2), tol);
    bundle["example2"] = classification_to_json(rep);
    lines.push_back(std::string("example2: ") + to_string(rep.final));
  }
  {
    const auto e = embed_rect(fx::example3_g(), fx::z_power(2), tol);
    json j = embedding_to_json(e);
    j["symbol"] = symbol_to_json(e.phi.laurent.trimmed(1e-12));
    j["kernel"] = basis_to_json(SubspaceBasis::from_columns(e.kernel.matrix(2), 2));
    bundle["example3"] = j;
    lines.push_back("example3: kernel dim " + std::to_string(e.kernel.size()) + ", angle " +
                    std::to_string(e.cross_check_angle));
  }
  bundle["counterexample"] = counterexample_json();
  lines.push_back("counterexample: mass " + std::to_string(bundle["counterexample"]["b1=1/2,b2=0"].get<double>()));
  {
    const auto rep = classify_kernel(fx::flagship_g(n), fx::z_power(1), tol);
    bundle["flagship"] = classification_to_json(rep);
    lines.push_back(std::string("flagship: ") + to_string(rep.final));
  }
  {
    const auto rep = classify_kernel(fx::one_plus_z(), fx::z_power(1), tol);
    bundle["one_plus_z"] = classification_to_json(rep);
    lines.push_back(std::string("one_plus_z: ") + to_string(rep.final) + ", mass gap " + std::to_string(rep.mass_gap));
  }
  {
    const auto c = construct_kernel(fx::recipe_g0p(), fx::z_garcia(), tol);
    bundle["matrix_recipe"] = construction_to_json(c);
    lines.push_back("matrix_recipe: dim F " + std::to_string(c.f.size()) + ", angle " +
                    std::to_string(c.checks.back().cross_check_angle));
  }

  if (!rc.out.empty()) {
    fs::create_directories(rc.out);
    write_json_file((fs::path(rc.out) / "examples.json").string(), bundle);
    const std::vector<Named> symbols = {{"flagship_g", fx::flagship_g(n)},
                                        {"flagship_g0p", fx::flagship_g0p(n)},
                                        {"one_plus_z", fx::one_plus_z()},
                                        {"example2_g", fx::example2_g()},
                                        {"example3_g", fx::example3_g()},
                                        {"recipe_g0p", fx::recipe_g0p()},
                                        {"z", fx::z_power(1)},
                                        {"z2", fx::z_power(2)},
                                        {"z_identity2", fx::z_power(1, 2)},
                                        {"z_garcia", fx::z_garcia()}};
    for (const auto& s : symbols) write_json_file((fs::path(rc.out) / (s.name + ".json")).string(), symbol_to_json(s.value));
  }
  if (rc.json || rc.out.empty()) {
    out << bundle.dump(2) << "\n";
  } else {
    for (const auto& l : lines) out << l << "\n";
  }
  return ok;
}

int cmd_classify(const RunConfig& rc, std::ostream& out) {
  need_inputs(rc, 2, "G.json U.json");
  const MatrixSymbol g = read_symbol_file(rc.inputs[0]);
  const MatrixSymbol u = read_symbol_file(rc.inputs[1]);
  const int n = rc.tol.trunc_degree;
  const ToleranceConfig half = half_config(rc.tol);

  ClassificationReport rep, rep_half;
  json j;
  if (g.is_square()) {
    rep = classify_kernel(g, u, rc.tol);
    rep_half = classify_kernel(g, u, half);
    j = classification_to_json(rep);
  } else {
    const auto e = embed_rect(g, u, rc.tol);
    rep = e.reduced;
    rep_half = embed_rect(g, u, half).reduced;
    j = classification_to_json(rep);
    j["embedding"] = embedding_to_json(e);
  }
  j["N"] = n;
  j["half_degree"] = {{"N", half.trunc_degree},
                      {"final", to_string(rep_half.final)},
                      {"mass_gap", rep_half.mass_gap},
                      {"cross_check_angle", rep_half.cross_check_angle}};
  j["drift"] = {{"mass_gap", std::abs(rep.mass_gap - rep_half.mass_gap)},
                {"cross_check_angle", std::abs(rep.cross_check_angle - rep_half.cross_check_angle)}};
  emit(rc, out, j, std::string("final: ") + to_string(rep.final));
  return rep.final == Final::indeterminate ? numerical_failure : ok;
}

int cmd_construct(const RunConfig& rc, std::ostream& out) {
  need_inputs(rc, 2, "G0prime.json U.json");
  const MatrixSymbol g0p = read_symbol_file(rc.inputs[0]);
  const MatrixSymbol u = read_symbol_file(rc.inputs[1]);
  const HayashiOptions opt;
  const auto c = construct_kernel(g0p, u, rc.tol, opt);
  const auto ch = construct_kernel(g0p, u, half_config(rc.tol), opt);
  json report = construction_to_json(c);
  const int h = ch.g.max_deg();
  report["N"] = rc.tol.trunc_degree;
  report["drift"] = {{"g_coeff", c.g.window(0, h).max_coeff_diff(ch.g)},
                     {"cross_check_angle", std::abs(c.checks.back().cross_check_angle - ch.checks.back().cross_check_angle)}};

  if (!rc.out.empty()) {
    fs::create_directories(rc.out);
    const fs::path dir(rc.out);
    write_json_file((dir / "G.json").string(), symbol_to_json(c.g));
    write_json_file((dir / "F.json").string(), basis_to_json(c.f));
    write_json_file((dir / "phi.json").string(), samples_to_json(c.phi.samples));
    write_json_file((dir / "report.json").string(), report);
  }
  if (rc.json || rc.out.empty())
    out << report.dump(2) << "\n";
  else
    out << "dim F: " << c.f.size() << ", cross-check angle: " << c.checks.back().cross_check_angle << "\n";
  return c.checks.back().cross_check_angle <= opt.angle_tol ? ok : numerical_failure;
}

std::vector<ResidualRow> verify_rows(const RunConfig& rc) {
  const std::string& id = rc.identity;
  const ToleranceConfig& tol = rc.tol;
  std::vector<ResidualRow> rows;

  if (id == "lemma31") {
    const auto probes1 = random_probes(1, 16, 11);
    auto gs = inputs_or(rc, {{"identity", MatrixSymbol::identity(1)},
                             {"one_plus_z", fx::one_plus_z()},
                             {"flagship", fx::flagship_g(tol.trunc_degree)}});
    for (const auto& g : gs)
      for (int n : tol.ladder) {
        const auto gn = normalize_columns(g.value.window(0, std::min(g.value.max_deg(), n)));
        const auto probes = g.value.cols() == 1 ? probes1 : random_probes(g.value.cols(), 16, 11);
        const double r = verify_lemma31(gn, sarason_B(gn, n).b, probes, n);
        rows.push_back({g.name, n, r, tol.residual_tol, r <= tol.residual_tol});
      }
  } else if (id == "thm34") {
    auto gs = inputs_or(rc, {{"one_plus_z", fx::one_plus_z()}, {"flagship", fx::flagship_g(tol.trunc_degree)}});
    for (const auto& g : gs)
      for (int n : tol.ladder) {
        const double r = thm34_residual(g.value, n);
        rows.push_back({g.name, n, r, 1e-6, r <= 1e-6});
      }
  } else if (id == "thm35") {
    std::vector<std::pair<Named, Named>> cases;
    if (rc.inputs.size() == 2) {
      cases.push_back({{stem(rc.inputs[0]), read_symbol_file(rc.inputs[0])},
                       {stem(rc.inputs[1]), read_symbol_file(rc.inputs[1])}});
    } else if (rc.inputs.empty()) {
      cases = {{{"g", fx::one_plus_z()}, {"z", fx::z_power(1)}},
               {{"g", fx::one_plus_z()}, {"z2", fx::z_power(2)}},
               {{"I", MatrixSymbol::identity(2)}, {"zI", fx::z_power(1, 2)}}};
    } else {
      throw PreconditionError("thm35 expects G.json U.json or no inputs");
    }
    for (const auto& [g, u] : cases)
      for (int n : tol.ladder) {
        const auto e = sarason_equivalence(g.value, u.value, n, tol.residual_tol);
        rows.push_back({g.name + "|" + u.name, n, e.isometry_defect, tol.residual_tol,
                        e.verdict != Verdict::indeterminate});
      }
  } else if (id == "pair-identity") {
    for (const auto& b : pair_fixtures(rc))
      for (int n : tol.ladder) {
        const auto p = pair_from_B(b.value, n, grid_for(n, tol), tol.residual_tol);
        rows.push_back({b.name, n, p.identity_residual, tol.residual_tol, p.identity_residual <= tol.residual_tol});
      }
  } else if (id == "cor53") {
    for (const auto& b : pair_fixtures(rc))
      for (const auto& u : fx::pair_inners(b.value.rows()))
        for (int n : tol.ladder) {
          const auto p = pair_from_B(symbol_mul(u.value, b.value), n, grid_for(n, tol), tol.residual_tol);
          rows.push_back({b.name + "|" + u.name, n, p.mass_gap, 10 * tol.residual_tol,
                          p.mass_gap <= 10 * tol.residual_tol});
        }
  } else if (id == "prop52") {
    for (const auto& b : pair_fixtures(rc))
      for (int n : tol.ladder) {
        const auto p = pair_from_B(b.value, n, grid_for(n, tol), tol.residual_tol);
        std::mt19937 rng(5);
        std::normal_distribution<double> nd;
        double worst = 0.0;
        for (int t = 0; t < 8; ++t) {
          MatrixSymbol q(p.a.cols(), 1, 0, 4);
          for (int k = 0; k <= 4; ++k)
            for (Index i = 0; i < q.rows(); ++i) q.at(k)(i, 0) = cplx(nd(rng), nd(rng));
          const auto h = HardyElement::from_symbol(symbol_mul_truncated(p.a, q, n));
          worst = std::max(worst, hb_plus(h, p, n).residual);
        }
        rows.push_back({b.name, n, worst, tol.residual_tol, worst <= tol.residual_tol});
      }
  } else {
    throw PreconditionError("unknown identity '" + id +
                            "' (expected lemma31, thm34, thm35, pair-identity, cor53 or prop52)");
  }
  return rows;
}

int cmd_verify(const RunConfig& rc, std::ostream& out) {
  const auto rows = verify_rows(rc);
  if (!rc.out.empty()) {
    std::ofstream f(rc.out);
    if (!f) throw std::runtime_error("cannot write " + rc.out);
    write_csv(f, rows);
  }
  if (rc.out.empty() || rc.json) write_csv(out, rows);
  return ok;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Toeplitz kernels, nearly invariant subspaces and Hayashi's classification"};
  app.require_subcommand(1);

  RunConfig rc;
  int degree = rc.tol.trunc_degree;
  int grid = 0;
  std::vector<int> ladder;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--degree", degree, "truncation degree N")->check(CLI::PositiveNumber);
    sub->add_option("--grid", grid, "boundary grid size K (power of two >= 4(N+1))");
    sub->add_option("--rank-tol", rc.tol.rank_tol, "relative singular-value threshold");
    sub->add_option("--residual-tol", rc.tol.residual_tol, "absolute identity threshold");
    sub->add_option("--ladder", ladder, "comma separated N values")->delimiter(',');
    sub->add_option("--out", rc.out, "output file or directory");
    sub->add_flag("--json", rc.json, "print JSON to stdout");
  };

  auto* ex = app.add_subcommand("examples", "run the golden fixtures");
  common(ex);
  auto* cl = app.add_subcommand("classify", "classify G K_U");
  common(cl);
  cl->add_option("inputs", rc.inputs, "G.json U.json")->required();
  auto* co = app.add_subcommand("construct", "build a kernel from G0' and U");
  common(co);
  co->add_option("inputs", rc.inputs, "G0prime.json U.json")->required();
  auto* ve = app.add_subcommand("verify", "identity residuals as CSV");
  common(ve);
  ve->add_option("identity", rc.identity, "lemma31 | thm34 | thm35 | pair-identity | cor53 | prop52")->required();
  ve->add_option("inputs", rc.inputs, "optional symbol files");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? ok : invalid_input;
  }

  try {
    rc.command = app.get_subcommands().front()->get_name();
    rc.tol.trunc_degree = degree;
    rc.tol.grid_size = grid > 0 ? grid : admissible_grid(degree, 512);
    if (!ladder.empty()) {
      rc.tol.ladder = ladder;
    } else {
      std::vector<int> l;
      for (int n : rc.tol.ladder)
        if (n <= degree) l.push_back(n);
      if (l.size() < 2) l = {std::max(1, degree / 2), degree};
      rc.tol.ladder = l;
    }
    validate(rc);
    if (rc.command == "examples") return cmd_examples(rc, out);
    if (rc.command == "classify") return cmd_classify(rc, out);
    if (rc.command == "construct") return cmd_construct(rc, out);
    return cmd_verify(rc, out);
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << "\n";
    return invalid_input;
  } catch (const DimensionError& e) {
    err << "error: " << e.what() << "\n";
    return invalid_input;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << "\n";
    return numerical_failure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace hardy::cli
