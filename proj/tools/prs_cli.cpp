#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "prs/eisenstein.hpp"
#include "prs/shellio.hpp"

namespace {

prs::Json cyclo_series_doc(const prs::QExpansion<prs::Cyclo>& f) {
  prs::Json coeffs = prs::Json::array();
  for (long n = 0; n <= f.prec(); ++n)
    coeffs.push_back(prs::cyclo_to_json(f.coeff(n)));
  return prs::Json{{"prec", f.prec()}, {"coeffs", coeffs}};
}

std::string stem_of(const std::string& name) {
  if (name.size() > 5 && name.substr(name.size() - 5) == ".json")
    return name.substr(0, name.size() - 5);
  return name;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact-arithmetic toolkit for ordinary p-adic Rankin-Selberg "
               "point values and their consistency suites"};
  app.require_subcommand(1);

  std::string workspace;
  prs::SuiteOptions opt;
  app.add_option("--workspace", workspace,
                 "workspace root (overrides PRS_WORKSPACE)");
  app.add_option("--p", opt.p, "working prime");
  app.add_option("--N", opt.N, "cyclotomic level");
  app.add_option("--m", opt.m, "Eisenstein weight");
  app.add_option("--r", opt.r, "p-power depth of the character modulus");
  app.add_option("--qprec", opt.qprec, "q-expansion precision");
  app.add_option("--pprec", opt.pprec, "p-adic precision cap");
  app.add_option("--samples", opt.samples, "sample count for seeded suites");
  app.add_option("--seed", opt.seed, "seed for the sampled suites");

  auto* cmd_ingest = app.add_subcommand("ingest", "validate and store payloads");
  std::vector<std::string> ingest_files;
  cmd_ingest->add_option("files", ingest_files, "JSON payload files")->required();

  auto* cmd_qexp =
      app.add_subcommand("qexp", "materialize the q-expansion of a stored form");
  std::string qexp_form;
  long qexp_prec = -1;
  cmd_qexp->add_option("--form", qexp_form, "ingested form payload name")
      ->required();
  cmd_qexp->add_option("--prec", qexp_prec, "output precision (default --qprec)");

  auto* cmd_eis = app.add_subcommand(
      "eis", "render the depleted Eisenstein family at (m, N, p)");
  bool eis_tilde = false;
  cmd_eis->add_flag("--tilde", eis_tilde,
                    "render the partially depleted parent at depth r instead");

  auto* cmd_euler = app.add_subcommand("euler", "run the Euler-factor suite");
  auto* cmd_gamma = app.add_subcommand("gamma", "run the gamma-factor suite");

  auto* cmd_lvalue =
      app.add_subcommand("lvalue", "evaluate the p-adic L-value at a point");
  auto* cmd_dual =
      app.add_subcommand("dual-lvalue", "evaluate the companion value at a point");
  std::string point_name;
  for (auto* c : {cmd_lvalue, cmd_dual})
    c->add_option("--point", point_name,
                  "ingested point payload (default: the shipped instance)");

  auto* cmd_fe = app.add_subcommand(
      "fe", "functional-equation residual at a crystalline point");
  std::string fe_point, fe_gamma;
  cmd_fe->add_option("--point", fe_point,
                     "point payload name or file (default: the shipped instance)");
  cmd_fe->add_option("--gamma", fe_gamma,
                     "gamma payload name or file (default: empty product)");

  auto* cmd_check = app.add_subcommand("check", "run a consistency suite");
  std::string suite;
  cmd_check->add_option("suite", suite, "eisenstein|euler|gamma|pipeline|fe|all")
      ->required();

  CLI11_PARSE(app, argc, argv);

  try {
    prs::Workspace ws(prs::Workspace::resolve_root(workspace));
    bool all_pass = true;

    auto resolve_payload = [&](const std::string& arg) -> std::string {
      if (ws.has_data(arg)) return arg;
      return ws.ingest_file(arg);
    };
    auto print_report = [&](const prs::SuiteReport& rep) {
      std::cout << rep.to_tsv();
      std::cout << "suite " << rep.suite << ": "
                << (rep.pass() ? "pass" : "fail") << "\n";
      all_pass = all_pass && rep.pass();
    };

    if (*cmd_ingest) {
      for (const auto& f : ingest_files) {
        std::string name = ws.ingest_file(f);
        std::cout << "ingested " << name << " " << ws.data_hash(name) << "\n";
      }
    } else if (*cmd_qexp) {
      if (qexp_prec < 0) qexp_prec = opt.qprec;
      prs::NewformData f =
          prs::newform_from_json(ws.load_data(resolve_payload(qexp_form)), qexp_prec);
      prs::Json doc = cyclo_series_doc(f.q_expansion(qexp_prec));
      doc["form"] = qexp_form;
      ws.write_result(stem_of(qexp_form) + "-qexp.json", doc);
      std::cout << doc.dump(2) << "\n";
    } else if (*cmd_eis) {
      prs::DirichletCharacter triv(1);
      prs::QExpansion<prs::Cyclo> series =
          eis_tilde
              ? prs::eis_F_tilde(opt.m, triv, opt.N, opt.p, opt.r, opt.qprec)
              : prs::eis_F(opt.m, triv, opt.N, opt.p, opt.qprec);
      prs::Json doc = cyclo_series_doc(series);
      doc["family"] = eis_tilde ? "F-tilde" : "F";
      doc["p"] = opt.p;
      doc["N"] = opt.N;
      doc["m"] = opt.m;
      std::string name = std::string(eis_tilde ? "eis-Ftilde" : "eis-F") + "-p" +
                         std::to_string(opt.p) + "-N" + std::to_string(opt.N) +
                         "-m" + std::to_string(opt.m) + ".json";
      ws.write_result(name, doc);
      std::cout << "wrote results/" << name << "\n";
    } else if (*cmd_euler) {
      print_report(prs::run_suite("euler", ws, opt));
    } else if (*cmd_gamma) {
      print_report(prs::run_suite("gamma", ws, opt));
    } else if (*cmd_lvalue || *cmd_dual) {
      std::string pname = point_name.empty() ? prs::ensure_fe_artifacts(ws)
                                             : resolve_payload(point_name);
      prs::LoadedPoint lp = prs::load_point(ws, pname);
      bool dual = static_cast<bool>(*cmd_dual);
      prs::PadicScalar v = prs::cached_point_value(ws, lp, pname, dual);
      std::cout << (dual ? "dual-lvalue " : "lvalue ") << pname << " = "
                << v.str() << "\n";
    } else if (*cmd_fe) {
      std::string pname = fe_point.empty() ? prs::ensure_fe_artifacts(ws)
                                           : resolve_payload(fe_point);
      std::string gname = fe_gamma;
      if (gname.empty() && fe_point.empty()) gname = "fe-gamma.json";
      prs::LoadedPoint lp = prs::load_point(ws, pname);
      prs::PadicScalar v = prs::cached_point_value(ws, lp, pname, false);
      prs::PadicScalar vd = prs::cached_point_value(ws, lp, pname, true);
      prs::Cyclo gp{prs::Rat(1)};
      if (!gname.empty())
        gp = prs::gamma_product_at_one(ws.load_data(resolve_payload(gname)));
      prs::PadicEmbedding emb(lp.pt.p, lp.budgets.pprec);
      prs::PadicScalar res =
          prs::fe_residual(v, vd, emb.embed(gp), lp.pt.N, lp.pt.f.weight(),
                           lp.pt.g.weight(), lp.pt.t);
      bool ok = res.is_zero_at_prec();
      std::cout << "lvalue      = " << v.str() << "\n"
                << "dual-lvalue = " << vd.str() << "\n"
                << "residual zero at absolute precision "
                << res.abs_prec() << ": " << (ok ? "pass" : "fail") << "\n";
      all_pass = all_pass && ok;
    } else if (*cmd_check) {
      if (suite == "all") {
        for (const char* s : {"eisenstein", "euler", "gamma", "pipeline", "fe"})
          print_report(prs::run_suite(s, ws, opt));
      } else {
        print_report(prs::run_suite(suite, ws, opt));
      }
    }
    return all_pass ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
