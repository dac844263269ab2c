// JSON / JSONL / CSV encodings of the library's values.
//
// Every record is integers, booleans and strings only. Objects are written
// with sorted keys, so identical inputs give identical bytes.
#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "hirz/curves.hpp"
#include "hirz/harness.hpp"
#include "hirz/lattice.hpp"
#include "hirz/oracle.hpp"
#include "hirz/reduction.hpp"

namespace hirz {

using json = nlohmann::json;

inline constexpr const char* kToolName = "hirz";
inline constexpr const char* kToolVersion = "1.0.0";

inline json to_json(const DivisorClass& d) { return {{"a", d.a}, {"b", d.b}, {"m", d.m}}; }

inline DivisorClass divisor_from_json(const json& j) {
  return {j.at("a").get<std::int64_t>(), j.at("b").get<std::int64_t>(), j.at("m").get<std::vector<std::int64_t>>()};
}

inline json to_json(const DimensionReport& r) {
  return {{"divisor", to_json(r.divisor)},
          {"computed_dim", r.computed_dim},
          {"expected_dim", r.expected_dim},
          {"trials", r.trials},
          {"certified_nonspecial", r.certified_nonspecial},
          {"h0_ambient", r.h0_ambient},
          {"rank", r.rank},
          {"prime", r.prime},
          {"seeds", r.seeds},
          {"trial_dims", r.trial_dims}};
}

inline json to_json(const ReductionTrace& t) {
  json steps = json::array();
  for (const auto& s : t.steps) {
    steps.push_back({{"kind", to_string(s.kind)},
                     {"class_removed", to_json(s.class_removed)},
                     {"multiple", s.multiple},
                     {"pairing", s.pairing},
                     {"v_before", s.v_before},
                     {"v_after", s.v_after}});
  }
  return {{"start", to_json(t.start)}, {"steps", steps}, {"residual", to_json(t.residual)}, {"stale", t.stale}};
}

inline json to_json(const SweepRecord& r) {
  json j{{"ctx", {{"e", r.e}, {"r", r.r}}},
         {"divisor", to_json(r.divisor)},
         {"effective", r.effective},
         {"nef", to_string(r.nef)},
         {"v", r.v},
         {"e_dim", r.e_dim},
         {"oracle_dim", r.oracle_dim},
         {"minus_k_degree", r.minus_k_degree},
         {"special", r.special},
         {"minus_one_special", r.minus_one_special},
         {"trace_id", r.trace_id},
         {"seeds", r.seeds}};
  if (r.nef_witness) j["nef_witness"] = to_json(*r.nef_witness);
  if (r.trace) j["trace"] = to_json(*r.trace);
  if (r.residual_dim) j["residual_dim"] = *r.residual_dim;
  if (r.reduction_error) j["reduction_error"] = *r.reduction_error;
  if (r.minus_ce_dim) j["minus_ce_dim"] = *r.minus_ce_dim;
  return j;
}

inline json to_json(const CheckResult& c) {
  return {{"name", c.name}, {"hard", c.hard}, {"examined", c.examined}, {"violations", c.violations.size()},
          {"passed", c.passed()}};
}

inline json to_json(const SweepSummary& s) {
  json checks = json::array();
  for (const auto& c : s.checks) checks.push_back(to_json(c));
  return {{"records", s.records},
          {"effective", s.effective},
          {"nef_certified", s.nef_certified},
          {"nef_unknown", s.nef_unknown},
          {"special", s.special},
          {"minus_one_special", s.minus_one_special},
          {"reduction_errors", s.reduction_errors},
          {"checks", checks}};
}

/// Configuration embedded in the first line of every output file.
struct RunConfig {
  std::uint64_t prime = kDefaultPrime;
  int default_trials = 3;
  std::uint64_t seed_base = 0;
  std::optional<std::pair<std::int64_t, std::int64_t>> catalog_bounds;
  std::string command;
  json arguments = json::object();
  std::string jsonl_path;
  std::string csv_path;

  [[nodiscard]] OracleOptions oracle() const { return {prime, seed_base, default_trials}; }
};

inline json to_json(const RunConfig& c) {
  json j{{"prime", c.prime},
         {"default_trials", c.default_trials},
         {"seed_base", c.seed_base},
         {"command", c.command},
         {"arguments", c.arguments},
         {"jsonl_path", c.jsonl_path},
         {"csv_path", c.csv_path}};
  if (c.catalog_bounds) j["catalog_bounds"] = {c.catalog_bounds->first, c.catalog_bounds->second};
  return j;
}

inline json header_line(const RunConfig& c) {
  return {{"type", "header"}, {"tool", kToolName}, {"version", kToolVersion}, {"config", to_json(c)}};
}

inline std::string records_to_jsonl(const RunConfig& cfg, const std::vector<SweepRecord>& records) {
  std::ostringstream out;
  out << header_line(cfg).dump() << '\n';
  for (const auto& r : records) out << to_json(r).dump() << '\n';
  return out.str();
}

inline std::string join_m(const std::vector<std::int64_t>& m, char sep) {
  std::string s;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (i) s += sep;
    s += std::to_string(m[i]);
  }
  return s;
}

/// Header row plus one row per record: the row count equals the JSONL line
/// count (header included).
inline std::string records_to_csv(const std::vector<SweepRecord>& records) {
  std::ostringstream out;
  out << "e,r,a,b,m,effective,nef,v,e_dim,oracle_dim,special,minus_one_special,trace_id\n";
  for (const auto& r : records) {
    out << r.e << ',' << r.r << ',' << r.divisor.a << ',' << r.divisor.b << ",\"" << join_m(r.divisor.m, ' ') << "\","
        << (r.effective ? 1 : 0) << ',' << to_string(r.nef) << ',' << r.v << ',' << r.e_dim << ',' << r.oracle_dim
        << ',' << (r.special ? 1 : 0) << ',' << (r.minus_one_special ? 1 : 0) << ',' << r.trace_id << '\n';
  }
  return out.str();
}

// Catalog cache: a header line with the cache key, then one line per kept
// class and one per excluded candidate.

inline std::string catalog_cache_key(const MinusOneClassSet& c) {
  std::string key = "e" + std::to_string(c.ctx.e) + "_r" + std::to_string(c.ctx.r) + "_a" + std::to_string(c.a_max) +
                    "_b" + std::to_string(c.b_max) + "_p" + std::to_string(c.prime) + "_s";
  for (std::size_t i = 0; i < c.seeds.size(); ++i) key += (i ? "-" : "") + std::to_string(c.seeds[i]);
  return key;
}

inline std::string catalog_to_jsonl(const MinusOneClassSet& c) {
  std::ostringstream out;
  json head{{"type", "catalog_header"}, {"tool", kToolName}, {"version", kToolVersion},
            {"e", c.ctx.e},             {"r", c.ctx.r},      {"a_max", c.a_max},
            {"b_max", c.b_max},         {"prime", c.prime},  {"seeds", c.seeds}};
  out << head.dump() << '\n';
  for (std::size_t i = 0; i < c.classes.size(); ++i) {
    out << json{{"type", "minus_one_class"}, {"divisor", to_json(c.classes[i])}, {"certified", to_string(c.certified[i])}}
               .dump()
        << '\n';
  }
  for (const auto& x : c.excluded) {
    json j{{"type", "excluded"}, {"divisor", to_json(x.divisor)}, {"reason", x.reason}, {"oracle_dim", x.oracle_dim}};
    if (x.witness) j["witness"] = to_json(*x.witness);
    out << j.dump() << '\n';
  }
  return out.str();
}

inline MinusOneClassSet catalog_from_jsonl(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  MinusOneClassSet c;
  bool have_header = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto j = json::parse(line);
    const auto type = j.at("type").get<std::string>();
    if (type == "catalog_header") {
      c.ctx = SurfaceContext(j.at("e").get<int>(), j.at("r").get<int>());
      c.a_max = j.at("a_max").get<std::int64_t>();
      c.b_max = j.at("b_max").get<std::int64_t>();
      c.prime = j.at("prime").get<std::uint64_t>();
      c.seeds = j.at("seeds").get<std::vector<std::uint64_t>>();
      have_header = true;
    } else if (type == "minus_one_class") {
      c.classes.push_back(divisor_from_json(j.at("divisor")));
      c.certified.push_back(j.at("certified").get<std::string>() == "oracle" ? Certification::oracle
                                                                             : Certification::closed_form);
    } else if (type == "excluded") {
      ExcludedClass x{divisor_from_json(j.at("divisor")), j.at("reason").get<std::string>(), std::nullopt,
                      j.at("oracle_dim").get<std::int64_t>()};
      if (j.contains("witness")) x.witness = divisor_from_json(j.at("witness"));
      c.excluded.push_back(std::move(x));
    }
  }
  if (!have_header) throw std::runtime_error("catalog file has no header line");
  return c;
}

/// Loads the catalog from `dir` when a file with the matching key exists,
/// otherwise builds and writes it.
inline MinusOneClassSet cached_catalog(const std::filesystem::path& dir, const SurfaceContext& ctx,
                                       std::int64_t a_max, std::int64_t b_max, const OracleOptions& opts) {
  MinusOneClassSet probe;
  probe.ctx = ctx;
  probe.a_max = a_max;
  probe.b_max = b_max;
  probe.prime = opts.prime;
  probe.seeds = opts.seeds();
  const auto path = dir / (catalog_cache_key(probe) + ".jsonl");
  if (std::filesystem::exists(path)) {
    std::ifstream in(path);
    std::stringstream buf;
    buf << in.rdbuf();
    return catalog_from_jsonl(buf.str());
  }
  auto cat = enumerate_minus_one_classes(ctx, a_max, b_max, opts);
  std::filesystem::create_directories(dir);
  std::ofstream(path) << catalog_to_jsonl(cat);
  return cat;
}

}  // namespace hirz
