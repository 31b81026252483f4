#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "prs/localfactors.hpp"
#include "prs/newform.hpp"
#include "prs/ordinary.hpp"

namespace prs {

using Json = nlohmann::json;

struct IngestError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Rationals travel as exact "a" or "a/b" strings in every payload.
std::string rat_str(const Rat& x);
Rat rat_parse(const std::string& s);

Json cyclo_to_json(const Cyclo& x);
Cyclo cyclo_from_json(const Json& j);
Json char_to_json(const DirichletCharacter& chi);
DirichletCharacter char_from_json(const Json& j);
Json qexp_to_json(const QExpansion<Rat>& f);
QExpansion<Rat> qexp_from_json(const Json& j);
Json newform_to_json(const NewformData& f);
// Kinds: "newform" (explicit prime table), "sigma-eisenstein" and "eta-delta"
// (coefficients generated up to coeff_bound).
NewformData newform_from_json(const Json& j, long coeff_bound);
Json wd_to_json(const WeilDeligneDatum<Cyclo>& wd);
WeilDeligneDatum<Cyclo> wd_from_json(const Json& j);
// {"unit", "valuation", "precision"}; a value with no known digits carries
// unit "0", precision 0 and its absolute precision in the valuation slot.
Json value_to_json(const PadicScalar& x);
PadicScalar value_from_json(long p, const Json& j);

std::uint64_t fnv1a64(std::string_view bytes);
std::string hash_hex(std::string_view bytes);

class Workspace;

// Dispatches on doc["kind"]; throws IngestError naming the first failing
// index or field.  ws, when given, resolves references to stored data.
void validate_payload(const Json& doc, const Workspace* ws);

// Directory layout: data/ for ingested payloads, cache/ for keyed results,
// reports/ for suite output, results/ for CLI value records, manifest.json
// with content hashes of everything under data/.
class Workspace {
 public:
  explicit Workspace(std::string root);

  // Priority: explicit flag, then PRS_WORKSPACE, then ./.prs-workspace.
  static std::string resolve_root(const std::string& flag);

  const std::string& root() const { return root_; }

  // Validate and store under data/<basename>.  Re-ingesting identical bytes
  // is a no-op; a name collision with different content is an error.
  std::string ingest_file(const std::string& path);
  std::string ingest_payload(const std::string& name, const Json& doc);

  bool has_data(const std::string& name) const;
  Json load_data(const std::string& name) const;
  std::string data_hash(const std::string& name) const;
  std::vector<std::string> data_names() const;

  std::optional<Json> cache_get(const std::string& key) const;
  void cache_put(const std::string& key, const Json& value);

  void write_report(const std::string& suite, const Json& report,
                    const std::string& tsv) const;
  void write_result(const std::string& name, const Json& doc) const;
  void rewrite_manifest() const;

 private:
  std::string root_;
  std::string data_path(const std::string& name) const;
};

std::string cache_key(const std::string& operation,
                      const std::vector<std::string>& input_hashes,
                      const PrecBudgets& budgets);

struct SuiteItem {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct SuiteReport {
  std::string suite;
  unsigned long long seed = 0;
  std::vector<SuiteItem> items;
  bool pass() const;
  Json to_json() const;
  std::string to_tsv() const;
};

struct SuiteOptions {
  long p = 3;
  long N = 4;
  long m = 2;
  long r = 1;
  long qprec = 100;
  long pprec = 30;
  long samples = 100;
  unsigned long long seed = 20260815;  // recorded in every report
};

// name in {eisenstein, euler, gamma, pipeline, fe}.  Writes the report pair
// into the workspace and returns it.
SuiteReport run_suite(const std::string& name, Workspace& ws,
                      const SuiteOptions& opt);

// Writes and ingests the generated artifacts of the shipped crystalline
// point (weight-12 basis over level 11p with its point and gamma files);
// returns the point name.  Idempotent.
std::string ensure_fe_artifacts(Workspace& ws);

struct LoadedPoint {
  PointSpec pt;
  OrdinarySpace<PadicScalar> space;
  PrecBudgets budgets;
  std::vector<std::string> input_hashes;
};
LoadedPoint load_point(const Workspace& ws, const std::string& point_name);

// Runs the pipeline through the cache; operation is "lvalue" or
// "dual-lvalue".  Also writes a result record with provenance.
PadicScalar cached_point_value(Workspace& ws, const LoadedPoint& lp,
                               const std::string& point_name, bool dual);

// Product over the listed tame data of the factor evaluated at x = 1;
// empty list gives 1.
Cyclo gamma_product_at_one(const Json& gamma_doc);

}  // namespace prs
