#include <CLI11.hpp>
#include <iostream>
#include <string>
#include <vector>

#include "cext/extension.hpp"
#include "cext/hhs.hpp"
#include "cext/lab.hpp"
#include "cext/quasimap.hpp"
#include "cext/registry.hpp"
#include "cext/report.hpp"

using namespace cext;

namespace {

std::vector<int> parse_radii(const std::string& s) {
  auto bad = [&]() -> std::vector<int> {
    throw input_error("radii must be a single value or an inclusive range a..b, got " + s);
  };
  auto to_int = [&](const std::string& t) {
    try {
      size_t pos = 0;
      int v = std::stoi(t, &pos);
      if (pos != t.size() || v < 0) return bad().front();
      return v;
    } catch (const input_error&) {
      throw;
    } catch (const std::exception&) {
      return bad().front();
    }
  };
  auto dots = s.find("..");
  if (dots == std::string::npos) return {to_int(s)};
  int a = to_int(s.substr(0, dots));
  int b = to_int(s.substr(dots + 2));
  if (b < a) bad();
  std::vector<int> out;
  for (int r = a; r <= b; ++r) out.push_back(r);
  return out;
}

std::string yn(bool b) { return b ? "pass" : "fail"; }

struct Cli {
  std::string format = "table";
  long long seed = 0;
  long long cap = (long long)kDefaultBallCap;
  int exit_code = 0;

  void emit(const Report& r) { std::cout << render(r, parse_format(format)); }
};

QuasiMap zero_phi(const GroupPtr& domain, const KDesc& k) {
  QuasiMap z;
  z.domain = domain;
  z.target = k;
  z.rule = [k](const GroupValue&) { return KValue::zero(k); };
  z.provenance = "zero map";
  return z;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact-arithmetic workbench for central extensions, "
               "quasimorphisms and hierarchical models"};
  app.require_subcommand(1);
  Cli cli;
  app.add_option("--format", cli.format, "output format: table, doc or csv");
  app.add_option("--seed", cli.seed, "seed recorded for reproducibility");
  app.add_option("--cap", cli.cap, "resource cap for enumerations");
  app.fallthrough();

  // cocycle
  auto* cocycle_cmd = app.add_subcommand("cocycle", "cocycle identities and norms");
  cocycle_cmd->require_subcommand(1);
  cocycle_cmd->fallthrough();
  {
    auto* c = cocycle_cmd->add_subcommand("check", "verify the cocycle condition");
    auto name = std::make_shared<std::string>("heisenberg");
    auto radius = std::make_shared<int>(3);
    c->add_option("--name", *name, "registered cocycle name");
    c->add_option("--radius", *radius, "ball radius for the triple check");
    c->callback([&cli, name, radius] {
      Cocycle w = registry_cocycle(*name);
      auto v = cocycle_violation(w, *radius, (size_t)cli.cap);
      Report rep;
      rep.title = "cocycle check";
      rep.fields = {{"name", *name},
                    {"radius", std::to_string(*radius)},
                    {"normalized", w.normalized ? "yes" : "no"},
                    {"result", yn(!v)}};
      if (v)
        rep.fields.push_back({"witness", v->g1.str() + " , " + v->g2.str() +
                                             " , " + v->g3.str() + " -> " +
                                             v->value.str()});
      cli.emit(rep);
      cli.exit_code = v ? 1 : 0;
    });
  }
  {
    auto* c = cocycle_cmd->add_subcommand("sup-norm", "sup norm over growing balls");
    auto name = std::make_shared<std::string>("heisenberg");
    auto radii = std::make_shared<std::string>("1..4");
    c->add_option("--name", *name, "registered cocycle name");
    c->add_option("--radii", *radii, "inclusive range a..b");
    c->callback([&cli, name, radii] {
      Cocycle w = registry_cocycle(*name);
      Report rep;
      rep.title = "cocycle sup-norm: " + *name;
      rep.columns = {"radius", "sup_norm", "g", "h"};
      for (int r : parse_radii(*radii)) {
        auto s = sup_norm_on_ball(w, r, (size_t)cli.cap);
        rep.rows.push_back({std::to_string(r), std::to_string(s.value),
                            s.g.str(), s.h.str()});
      }
      cli.emit(rep);
    });
  }

  // extension
  auto* ext_cmd = app.add_subcommand("extension", "dictionary and growth probes");
  ext_cmd->require_subcommand(1);
  ext_cmd->fallthrough();
  {
    auto* c = ext_cmd->add_subcommand(
        "build", "build the twisted product of a cocycle and verify the round trip");
    auto name = std::make_shared<std::string>("heisenberg");
    auto radius = std::make_shared<int>(3);
    c->add_option("--name", *name, "registered cocycle name");
    c->add_option("--radius", *radius, "ball radius for the comparison");
    c->callback([&cli, name, radius] {
      Cocycle w = registry_cocycle(*name);
      ExtensionBundle built = build_extension(w.coeff, w.base, w);
      Cocycle back = euler_cocycle(built);
      Cocycle normal = normalize_cocycle(w).first;
      long long worst = 0;
      Ball b = ball(w.base, *radius, (size_t)cli.cap);
      for (const auto& g : b.elems)
        for (const auto& h : b.elems) {
          KValue diff = back(g, h).sub(w.coeff, normal(g, h));
          worst = std::max(worst, diff.norm());
        }
      Report rep;
      rep.title = "extension build round trip";
      rep.fields = {{"name", *name},
                    {"total", built.total->describe()},
                    {"radius", std::to_string(*radius)},
                    {"max deviation", std::to_string(worst)},
                    {"result", yn(worst == 0)}};
      cli.emit(rep);
      cli.exit_code = worst == 0 ? 0 : 1;
    });
  }
  {
    auto* c = ext_cmd->add_subcommand("probe", "Euler cocycle growth over balls");
    auto name = std::make_shared<std::string>("heisenberg");
    auto radii = std::make_shared<std::string>("1..4");
    c->add_option("--name", *name, "registered extension name");
    c->add_option("--radii", *radii, "inclusive range a..b");
    c->callback([&cli, name, radii] {
      GrowthTable t = boundedness_probe(registry_extension(*name), parse_radii(*radii));
      Report rep;
      rep.title = "extension probe: " + *name;
      rep.fields = {{"classification", t.classification}};
      rep.columns = {"radius", "sup_norm", "g", "h"};
      for (const auto& row : t.rows)
        rep.rows.push_back({std::to_string(row.radius), std::to_string(row.value),
                            row.g.str(), row.h.str()});
      cli.emit(rep);
    });
  }

  // qm
  auto* qm_cmd = app.add_subcommand("qm", "quasimorphism probes");
  qm_cmd->require_subcommand(1);
  qm_cmd->fallthrough();
  {
    auto* c = qm_cmd->add_subcommand("defect", "defect of a Brooks counting map");
    auto pattern = std::make_shared<std::string>("a b");
    auto radius = std::make_shared<int>(3);
    c->add_option("--pattern", *pattern, "reduced pattern word over a, b");
    c->add_option("--radius", *radius, "ball radius");
    c->callback([&cli, pattern, radius] {
      GroupPtr f2 = Group::free_group(2, {"a", "b"});
      QuasiMap phi = brooks(f2, f2->parse_word(*pattern));
      DefectResult d = defect_on_ball(phi, *radius, (size_t)cli.cap);
      Report rep;
      rep.title = "brooks defect";
      rep.fields = {{"pattern", *pattern},
                    {"radius", std::to_string(*radius)},
                    {"defect", std::to_string(d.value)},
                    {"witness", d.e1.str() + " , " + d.e2.str()}};
      cli.emit(rep);
    });
  }
  {
    auto* c = qm_cmd->add_subcommand("homogenize", "truncated homogenisation");
    auto pattern = std::make_shared<std::string>("a b");
    auto word = std::make_shared<std::string>("a b");
    auto n = std::make_shared<long long>(64);
    c->add_option("--pattern", *pattern, "Brooks pattern over a, b");
    c->add_option("--word", *word, "element whose growth rate is measured");
    c->add_option("--n", *n, "truncation exponent");
    c->callback([&cli, pattern, word, n] {
      GroupPtr f2 = Group::free_group(2, {"a", "b"});
      QuasiMap phi = brooks(f2, f2->parse_word(*pattern));
      GroupValue g = f2->evaluate_word(f2->parse_word(*word));
      Rational v = homogenize(phi, g, *n);
      Report rep;
      rep.title = "homogenisation";
      rep.fields = {{"pattern", *pattern},
                    {"word", *word},
                    {"n", std::to_string(*n)},
                    {"value", v.str()}};
      cli.emit(rep);
    });
  }
  {
    auto* c = qm_cmd->add_subcommand("busemann", "drift toward the positive end");
    auto translations = std::make_shared<std::vector<long long>>();
    auto word = std::make_shared<std::string>("a");
    auto window = std::make_shared<long long>(64);
    c->add_option("--translations", *translations,
                  "per-generator translation lengths")
        ->delimiter(',');
    c->add_option("--word", *word, "element over generators a, b, c, ...");
    c->add_option("--window", *window, "tail window start T");
    c->callback([&cli, translations, word, window] {
      if (translations->empty())
        throw input_error("busemann: at least one translation length is required");
      std::vector<std::string> names;
      for (size_t i = 0; i < translations->size(); ++i)
        names.push_back(std::string(1, (char)('a' + i)));
      GroupPtr f = Group::free_group((int)translations->size(), names);
      GroupValue g = f->evaluate_word(f->parse_word(*word));
      Rational v = busemann(*translations, g, *window);
      Report rep;
      rep.title = "busemann value";
      rep.fields = {{"word", *word},
                    {"window", std::to_string(*window)},
                    {"value", v.str()}};
      cli.emit(rep);
    });
  }

  // qce
  auto* qce_cmd = app.add_subcommand("qce", "quotient central extension diagnostics");
  qce_cmd->require_subcommand(1);
  qce_cmd->fallthrough();
  {
    auto* c = qce_cmd->add_subcommand("pullback", "pushforward section identity");
    auto name = std::make_shared<std::string>("heisenberg");
    auto radius = std::make_shared<int>(3);
    c->add_option("--name", *name, "registered quotient extension name");
    c->add_option("--radius", *radius, "ball radius");
    c->callback([&cli, name, radius] {
      QCEBundle qce = registry_qce(*name);
      PullbackReport rep = pullback_check(qce, *radius);
      Report out;
      out.title = "pullback check: " + *name;
      out.fields = {{"radius", std::to_string(rep.radius)},
                    {"pairs", std::to_string(rep.pairs_checked)},
                    {"section data", yn(rep.section_data_ok)},
                    {"result", yn(rep.ok)}};
      if (!rep.violations.empty()) {
        const auto& v = rep.violations.front();
        out.fields.push_back({"witness", v.g.str() + " , " + v.h.str() + " : " +
                                             v.pushed.str() + " != " +
                                             v.bottom.str()});
      }
      cli.emit(out);
      cli.exit_code = rep.ok ? 0 : 1;
    });
  }
  {
    auto* c = qce_cmd->add_subcommand("boundary", "coboundary identity on pi(N)");
    auto name = std::make_shared<std::string>("heisenberg");
    auto radius = std::make_shared<int>(4);
    c->add_option("--name", *name, "registered quotient extension name");
    c->add_option("--radius", *radius, "ball radius");
    c->callback([&cli, name, radius] {
      QCEBundle qce = registry_qce(*name);
      QuasiMap chi = chi_from_cocycle(qce.top);
      Cocycle omega = euler_cocycle(qce.top);
      BoundaryReport rep = boundary_identity_check(qce, chi, omega, *radius);
      Report out;
      out.title = "boundary identity: " + *name;
      out.fields = {{"radius", std::to_string(rep.radius)},
                    {"pairs", std::to_string(rep.pairs_checked)},
                    {"result", yn(rep.ok)}};
      if (rep.violation)
        out.fields.push_back({"witness", rep.violation->first.str() + " , " +
                                             rep.violation->second.str() + " : " +
                                             rep.lhs.str() + " != " +
                                             rep.rhs.str()});
      cli.emit(out);
      cli.exit_code = rep.ok ? 0 : 1;
    });
  }
  {
    auto* c = qce_cmd->add_subcommand("extendability",
                                      "slack of a candidate extension of chi");
    auto name = std::make_shared<std::string>("heisenberg");
    auto radius = std::make_shared<int>(4);
    auto pattern = std::make_shared<std::string>("");
    c->add_option("--name", *name, "registered quotient extension name");
    c->add_option("--radius", *radius, "ball radius");
    c->add_option("--pattern", *pattern,
                  "Brooks pattern for the candidate (default: zero map)");
    c->callback([&cli, name, radius, pattern] {
      QCEBundle qce = registry_qce(*name);
      QuasiMap chi = chi_from_cocycle(qce.top);
      QuasiMap phi = pattern->empty()
                         ? zero_phi(qce.top.base, chi.target)
                         : brooks(qce.top.base, qce.top.base->parse_word(*pattern));
      ExtendabilityReport rep = extendability_probe(qce, chi, phi, *radius);
      Report out;
      out.title = "extendability probe: " + *name;
      out.fields = {{"radius", std::to_string(rep.radius)},
                    {"candidate", pattern->empty() ? "zero map" : *pattern},
                    {"mismatch", std::to_string(rep.mismatch)},
                    {"mismatch witness", rep.mismatch_witness.str()},
                    {"candidate defect", std::to_string(rep.defect.value)}};
      cli.emit(out);
    });
  }

  // examples
  auto* ex_cmd = app.add_subcommand("examples", "the worked examples");
  ex_cmd->require_subcommand(1);
  ex_cmd->fallthrough();
  {
    auto* c = ex_cmd->add_subcommand("heisenberg", "quadratic growth table");
    auto radii = std::make_shared<std::string>("1..8");
    c->add_option("--radii", *radii, "inclusive range a..b");
    c->callback([&cli, radii] {
      GrowthTable t =
          boundedness_probe(registry_extension("heisenberg"), parse_radii(*radii));
      Report rep;
      rep.title = "heisenberg growth";
      rep.fields = {{"classification", t.classification}};
      rep.columns = {"r", "sup_norm"};
      for (const auto& row : t.rows)
        rep.rows.push_back({std::to_string(row.radius), std::to_string(row.value)});
      cli.emit(rep);
    });
  }
  {
    auto* c = ex_cmd->add_subcommand("triangle", "reflection triple verification");
    c->callback([&cli] {
      TriangleReport t = verify_triangle_remark();
      Report rep;
      rep.title = "triangle example";
      rep.fields = {{"result", yn(t.ok)}};
      rep.columns = {"check", "status", "detail"};
      for (const auto& line : t.checks)
        rep.rows.push_back({line.label, yn(line.ok), line.detail});
      cli.emit(rep);
      cli.exit_code = t.ok ? 0 : 1;
    });
  }

  // hhs
  auto* hhs_cmd = app.add_subcommand("hhs", "finite hierarchical model checker");
  hhs_cmd->require_subcommand(1);
  hhs_cmd->fallthrough();
  auto model_path = std::make_shared<std::string>();
  {
    auto* c = hhs_cmd->add_subcommand("check", "run the eleven axioms");
    auto delta = std::make_shared<long long>(1);
    auto theta = std::make_shared<std::vector<long long>>();
    auto fdim = std::make_shared<bool>(false);
    auto pup = std::make_shared<bool>(false);
    c->add_option("--model", *model_path, "model document path")->required();
    c->add_option("--delta", *delta, "hierarchy constant");
    c->add_option("--theta", *theta, "uniqueness table (default: derived)")
        ->delimiter(',');
    c->add_flag("--finite-dimension", *fdim, "swap containers for finite dimension");
    c->add_flag("--passing-up", *pup, "swap large links for passing up");
    c->callback([&cli, delta, theta, fdim, pup, model_path] {
      HHSModel m = load_model(*model_path);
      CheckOptions opts;
      opts.finite_dimension_variant = *fdim;
      opts.passing_up_variant = *pup;
      opts.geodesic_cap = (size_t)cli.cap;
      AxiomReport rep = check_axioms(m, *delta, *theta, opts);
      Report out;
      out.title = "axiom check: " + m.name;
      std::string th;
      for (long long v : rep.theta) th += (th.empty() ? "" : " ") + std::to_string(v);
      out.fields = {{"delta", std::to_string(rep.delta)},
                    {"result", yn(rep.pass)},
                    {"theta", th},
                    {"theta derived", rep.theta_derived ? "yes" : "no"}};
      if (!rep.passing_up.empty()) {
        std::string p;
        for (const auto& [t, v] : rep.passing_up)
          p += (p.empty() ? "" : " ") + std::to_string(t) + ":" + std::to_string(v);
        out.fields.push_back({"passing up", p});
      }
      out.columns = {"axiom", "status", "min_delta", "witness"};
      for (const auto& a : rep.axioms)
        out.rows.push_back({a.name, yn(a.pass), std::to_string(a.min_delta),
                            a.witness});
      cli.emit(out);
      cli.exit_code = rep.pass ? 0 : 1;
    });
  }
  {
    auto* c = hhs_cmd->add_subcommand("min-delta", "smallest passing constant");
    auto dmax = std::make_shared<long long>(5);
    auto fdim = std::make_shared<bool>(false);
    auto pup = std::make_shared<bool>(false);
    c->add_option("--model", *model_path, "model document path")->required();
    c->add_option("--delta-max", *dmax, "search bound");
    c->add_flag("--finite-dimension", *fdim, "swap containers for finite dimension");
    c->add_flag("--passing-up", *pup, "swap large links for passing up");
    c->callback([&cli, dmax, fdim, pup, model_path] {
      HHSModel m = load_model(*model_path);
      CheckOptions opts;
      opts.finite_dimension_variant = *fdim;
      opts.passing_up_variant = *pup;
      opts.geodesic_cap = (size_t)cli.cap;
      auto v = min_delta(m, *dmax, opts);
      Report out;
      out.title = "minimal hierarchy constant: " + m.name;
      out.fields = {{"delta-max", std::to_string(*dmax)},
                    {"min_delta", v ? std::to_string(*v) : "none"}};
      cli.emit(out);
      cli.exit_code = v ? 0 : 1;
    });
  }
  {
    auto* c = hhs_cmd->add_subcommand("restrict", "drop bounded domains");
    auto threshold = std::make_shared<long long>(0);
    auto delta = std::make_shared<long long>(0);
    auto emit_model = std::make_shared<bool>(false);
    c->add_option("--model", *model_path, "model document path")->required();
    c->add_option("--threshold", *threshold, "diameter threshold")->required();
    c->add_option("--delta", *delta, "hierarchy constant");
    c->add_flag("--emit-model", *emit_model, "print the restricted model document");
    c->callback([&cli, threshold, delta, emit_model, model_path] {
      HHSModel m = load_model(*model_path);
      RestrictResult res = restrict_to_unbounded(m, *threshold, *delta);
      if (*emit_model) {
        std::cout << write_model(res.model);
        return;
      }
      Report out;
      out.title = "restriction to unbounded domains: " + m.name;
      std::string kept;
      for (int v : res.kept)
        kept += (kept.empty() ? "" : " ") + m.domain_names[v];
      std::string p;
      for (const auto& [t, v] : res.passing_up)
        p += (p.empty() ? "" : " ") + std::to_string(t) + ":" + std::to_string(v);
      out.fields = {{"threshold", std::to_string(*threshold)},
                    {"kept", kept},
                    {"passing up", p}};
      cli.emit(out);
    });
  }
  {
    auto* c = hhs_cmd->add_subcommand("quotient", "orbit space of the action");
    auto delta = std::make_shared<long long>(0);
    auto emit_model = std::make_shared<bool>(false);
    c->add_option("--model", *model_path, "model document path")->required();
    c->add_option("--delta", *delta, "hierarchy constant");
    c->add_flag("--emit-model", *emit_model, "print the quotient model document");
    c->callback([&cli, delta, emit_model, model_path] {
      HHSModel m = load_model(*model_path);
      QuotientResult res = quotient_model(m, *delta);
      if (*emit_model) {
        std::cout << write_model(res.model);
        return;
      }
      Report out;
      out.title = "quotient model: " + m.name;
      out.fields = {{"points", std::to_string(res.model.points.size())},
                    {"max orbit diameter", std::to_string(res.max_orbit_diameter)},
                    {"delta out", std::to_string(res.delta_out)}};
      cli.emit(out);
    });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const input_error& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const resource_error& e) {
    std::cerr << "resource cap: " << e.what() << "\n";
    return 3;
  } catch (const structural_error& e) {
    std::cerr << "verification failed: " << e.what() << "\n";
    return 1;
  }
  return cli.exit_code;
}
