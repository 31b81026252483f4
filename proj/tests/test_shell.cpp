#include "doctest.h"

#include <filesystem>
#include <fstream>

#include "prs/shellio.hpp"

using namespace prs;
namespace fs = std::filesystem;

namespace {

fs::path fresh_root(const std::string& tag) {
  fs::path d = fs::temp_directory_path() / ("prs-test-" + tag);
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

Json parse_file(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  return Json::parse(in);
}

std::string ingest_failure(Workspace& ws, const std::string& name, const Json& doc) {
  try {
    ws.ingest_payload(name, doc);
  } catch (const IngestError& e) {
    return e.what();
  }
  return "";
}

bool has_item(const SuiteReport& rep, const std::string& name, std::string* detail = nullptr) {
  for (auto& it : rep.items)
    if (it.name == name) {
      if (detail) *detail = it.detail;
      return it.pass;
    }
  return false;
}

}  // namespace

TEST_SUITE("shell") {

TEST_CASE("content hashing") {
  CHECK(hash_hex("") == "cbf29ce484222325");
  CHECK(hash_hex("a") == "af63dc4c8601ec8c");
  CHECK(fnv1a64("abc") != fnv1a64("acb"));
}

TEST_CASE("scalar and payload round trips") {
  CHECK(rat_str(Rat(-22, 7)) == "-22/7");
  CHECK(rat_parse("35/15") == Rat(7, 3));
  CHECK_THROWS_AS(rat_parse("x"), IngestError);

  Cyclo z = Cyclo::zeta(12, 5) + Cyclo(Rat(1, 2));
  CHECK(cyclo_from_json(cyclo_to_json(z)) == z);
  CHECK(cyclo_to_json(Cyclo(Rat(3, 4))).is_string());

  DirichletCharacter chi = DirichletCharacter::quadratic(5).lift_to(15);
  CHECK(char_from_json(char_to_json(chi)) == chi);

  QExpansion<Rat> f(std::vector<Rat>{Rat(1), Rat(-2), Rat(1, 3)});
  CHECK(qexp_from_json(qexp_to_json(f)).agrees_with(f));
  CHECK(qexp_to_json(f)["prec"] == 2);

  WeilDeligneDatum<Cyclo> wd = wd_from_json(parse_file("tests/data/wd-sample.json"));
  CHECK(wd_consistent(wd));
  CHECK(wd.nu == 3);
  WeilDeligneDatum<Cyclo> back = wd_from_json(wd_to_json(wd));
  CHECK(back.frob_inv.eq(wd.frob_inv));
  CHECK(back.sigma.eq(wd.sigma));
  CHECK(back.eps0 == wd.eps0);

  PadicScalar x = PadicScalar::unit(5, Int(17), -2, 6);
  CHECK(value_from_json(5, value_to_json(x)).str() == x.str());
  PadicScalar zz = PadicScalar::zero_at(5, 9);
  Json jz = value_to_json(zz);
  CHECK(jz["unit"] == "0");
  CHECK(jz["precision"] == 0);
  CHECK(jz["valuation"] == 9);
  CHECK(value_from_json(5, jz).is_zero_at_prec());
  CHECK(value_from_json(5, jz).abs_prec() == 9);
}

TEST_CASE("newform document round trip") {
  Json doc = parse_file("tests/data/f11.json");
  NewformData f = newform_from_json(doc, 30);
  Json back = newform_to_json(f);
  CHECK(back["weight"] == 2);
  CHECK(back["level"] == 11);
  CHECK(back["ap"]["7"] == "-2");
  NewformData again = newform_from_json(back, 30);
  CHECK(again.coefficient(12) == f.coefficient(12));
}

TEST_CASE("workspace ingestion is idempotent and collision-safe") {
  fs::path root = fresh_root("ingest");
  Workspace ws(root.string());

  fs::path inc = root / "incoming";
  fs::create_directories(inc);
  fs::copy_file("tests/data/f11.json", inc / "f11.json");
  std::string name = ws.ingest_file((inc / "f11.json").string());
  CHECK(name == "f11.json");
  CHECK(ws.has_data("f11.json"));
  std::string h = ws.data_hash("f11.json");
  CHECK(h.size() == 16);

  // identical bytes: no-op
  CHECK(ws.ingest_file((inc / "f11.json").string()) == "f11.json");
  CHECK(ws.data_hash("f11.json") == h);

  // same name, different content: rejected
  fs::path other = root / "other";
  fs::create_directories(other);
  Json doc = parse_file("tests/data/f11.json");
  doc["ap"]["53"] = "1";
  std::ofstream(other / "f11.json") << doc.dump(2) << "\n";
  CHECK_THROWS_AS(ws.ingest_file((other / "f11.json").string()), IngestError);

  Json manifest = parse_file((root / "manifest.json").string());
  CHECK(manifest["files"]["f11.json"] == h);
  CHECK(ws.data_names() == std::vector<std::string>{"f11.json"});
}

TEST_CASE("ingestion validates payloads and names the failure") {
  fs::path root = fresh_root("validate");
  Workspace ws(root.string());
  Json good = parse_file("tests/data/f11.json");

  Json bad = good;
  bad["ap"]["9"] = "1";
  CHECK(ingest_failure(ws, "bad1.json", bad).find("ap key 9") != std::string::npos);

  bad = good;
  bad["an"]["6"] = "5";
  CHECK(ingest_failure(ws, "bad2.json", bad).find("an entry at 6") != std::string::npos);

  Json q{{"kind", "qexp"}, {"prec", 3}, {"coeffs", {"1", "2"}}};
  CHECK(ingest_failure(ws, "bad3.json", q).find("coeffs length") != std::string::npos);

  Json wd = parse_file("tests/data/wd-sample.json");
  wd["frob_inv"] = Json::array({Json::array({"1", "2"}), Json::array({"3", "4"})});
  CHECK(ingest_failure(ws, "bad4.json", wd).find("commutation") != std::string::npos);

  Json unk{{"kind", "widget"}};
  CHECK(ingest_failure(ws, "bad5.json", unk).find("unknown payload kind") != std::string::npos);

  CHECK(!ws.has_data("bad1.json"));
}

TEST_CASE("space validation checks rank and coverage") {
  fs::path root = fresh_root("space");
  Workspace ws(root.string());

  QExpansion<Rat> b0(std::vector<Rat>(25, Rat(0)));
  b0.set_coeff(1, Rat(1));
  QExpansion<Rat> b1 = b0.scaled(Rat(3));
  ws.ingest_payload("b0.json", qexp_to_json(b0));
  ws.ingest_payload("b1.json", qexp_to_json(b1));

  Json sp{{"kind", "space"},
          {"k", 2},
          {"level", 11},
          {"char", char_to_json(DirichletCharacter(11))},
          {"basis", {"b0.json", "b1.json"}},
          {"verified_prec", 20}};
  CHECK(ingest_failure(ws, "sp.json", sp).find("linearly dependent") != std::string::npos);

  Json sp2 = sp;
  sp2["basis"] = {"b0.json"};
  sp2["verified_prec"] = 5;  // below the determining bound for weight 2, level 11
  CHECK(ingest_failure(ws, "sp2.json", sp2).find("verified_prec") != std::string::npos);

  Json ok = sp;
  ok["basis"] = {"b0.json"};
  ws.ingest_payload("ok.json", ok);
  CHECK(ws.has_data("ok.json"));
}

TEST_CASE("cache keys and storage") {
  fs::path root = fresh_root("cache");
  Workspace ws(root.string());
  PrecBudgets b{8, 45, 5};
  std::string k1 = cache_key("lvalue", {"aa", "bb"}, b);
  std::string k2 = cache_key("dual-lvalue", {"aa", "bb"}, b);
  CHECK(k1 != k2);
  CHECK(k1 == cache_key("lvalue", {"aa", "bb"}, b));
  PrecBudgets b2 = b;
  b2.pprec = 90;
  CHECK(cache_key("lvalue", {"aa", "bb"}, b2) != k1);

  CHECK(!ws.cache_get(k1).has_value());
  ws.cache_put(k1, Json{{"x", 1}});
  auto got = ws.cache_get(k1);
  REQUIRE(got.has_value());
  CHECK((*got)["x"] == 1);
}

TEST_CASE("suite reports are deterministic") {
  fs::path root = fresh_root("suite");
  Workspace ws(root.string());
  SuiteOptions opt;
  opt.samples = 5;
  opt.qprec = 24;
  SuiteReport a = run_suite("gamma", ws, opt);
  SuiteReport b = run_suite("gamma", ws, opt);
  CHECK(a.pass());
  CHECK(a.to_json().dump() == b.to_json().dump());
  CHECK(a.to_tsv() == b.to_tsv());
  CHECK(a.seed == opt.seed);
  CHECK(fs::exists(root / "reports" / "gamma.json"));
  CHECK(fs::exists(root / "reports" / "gamma.tsv"));

  SuiteReport e1 = run_suite("eisenstein", ws, opt);
  CHECK(e1.pass());
  std::string detail;
  CHECK(has_item(e1, "w-route", &detail));
}

TEST_CASE("euler suite picks up ingested forms") {
  fs::path root = fresh_root("euler");
  Workspace ws(root.string());
  ws.ingest_file("tests/data/f11.json");
  ws.ingest_file("tests/data/delta.json");
  SuiteOptions opt;
  opt.samples = 10;
  SuiteReport rep = run_suite("euler", ws, opt);
  CHECK(rep.pass());
  std::string detail;
  CHECK(has_item(rep, "p-poly-reciprocal", &detail));
  CHECK(detail.find("forms=2") != std::string::npos);
}

TEST_CASE("functional-equation artifacts load as a point") {
  fs::path root = fresh_root("fe");
  Workspace ws(root.string());
  std::string pname = ensure_fe_artifacts(ws);
  CHECK(ws.has_data(pname));
  CHECK(ws.has_data("space-w12-p11.json"));
  CHECK(ws.has_data("fe-basis-delta.json"));
  CHECK(ws.load_data("fe-basis-delta.json")["prec"] == 1320);

  // idempotent: calling again changes nothing
  std::vector<std::string> names = ws.data_names();
  CHECK(ensure_fe_artifacts(ws) == pname);
  CHECK(ws.data_names() == names);

  LoadedPoint lp = load_point(ws, pname);
  CHECK(lp.pt.p == 11);
  CHECK(lp.pt.N == 1);
  CHECK(lp.pt.t == 2);
  CHECK(lp.space.weight == 12);
  CHECK(lp.space.level == 11);
  REQUIRE(lp.space.basis.size() == 4);
  CHECK(lp.budgets.qrows == 8);
  CHECK(lp.budgets.pprec == 45);
  CHECK(lp.budgets.up_iters == 5);
  CHECK(lp.input_hashes.size() >= 4);
}

TEST_CASE("workspace root resolution order") {
  CHECK(Workspace::resolve_root("/x/y") == "/x/y");
  const char* saved = getenv("PRS_WORKSPACE");
  setenv("PRS_WORKSPACE", "/from/env", 1);
  CHECK(Workspace::resolve_root("") == "/from/env");
  CHECK(Workspace::resolve_root("/flag/wins") == "/flag/wins");
  if (saved)
    setenv("PRS_WORKSPACE", saved, 1);
  else
    unsetenv("PRS_WORKSPACE");
  CHECK(Workspace::resolve_root("") == (saved ? std::string(saved) : "./.prs-workspace"));
}

}  // TEST_SUITE
