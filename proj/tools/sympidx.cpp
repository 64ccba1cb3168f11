#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "sympidx/decompose.hpp"
#include "sympidx/errors.hpp"
#include "sympidx/index.hpp"
#include "sympidx/io.hpp"
#include "sympidx/oracles.hpp"
#include "sympidx/r8.hpp"
#include "sympidx/random.hpp"
#include "sympidx/tolerances.hpp"
#include "sympidx/version.hpp"

using namespace sympidx;

namespace {

enum class Format { json, csv, text };

struct RunConfig {
  std::string command;
  std::string input_path;
  std::optional<long long> m_max;
  std::vector<std::string> tol_overrides;
  Format format = Format::json;
  std::uint64_t rng_seed = 20240601;
  bool enforce = true;
  std::string output_path;
  // command-specific
  bool characteristic = false;
  int seeds = 50;
  int angle_samples = 100;
  long long i_min = -15, i_max = 15;
  int samples_per_period = 64;
};

// Exit codes: 0 success, 1 input or precision error, 2 violations found.
constexpr int kOk = 0, kInputError = 1, kViolations = 2;

int workers_from_env() {
  if (const char* w = std::getenv("SYMPIDX_WORKERS")) {
    try {
      const int v = std::stoi(w);
      if (v >= 1) return v;
    } catch (...) {
    }
    throw std::invalid_argument("SYMPIDX_WORKERS must be a positive integer");
  }
  const unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : static_cast<int>(hc);
}

void apply_tolerances(const RunConfig& cfg) {
  Tolerances t = default_tolerances();
  for (const std::string& o : cfg.tol_overrides) {
    const auto eq = o.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("--tol expects name=value, got '" + o + "'");
    double v;
    try {
      v = std::stod(o.substr(eq + 1));
    } catch (...) {
      throw std::invalid_argument("--tol value for '" + o.substr(0, eq) + "' is not a number");
    }
    t.set(o.substr(0, eq), v);
  }
  set_default_tolerances(t);
}

json envelope(const RunConfig& cfg, json parameters) {
  return {{"tool", "sympidx"},
          {"version", std::string(version)},
          {"command", cfg.command},
          {"tolerances", default_tolerances().to_json()},
          {"parameters", std::move(parameters)}};
}

DecomposeOptions decompose_options() {
  const Tolerances& t = default_tolerances();
  DecomposeOptions o;
  o.cluster_tol = t.cluster;
  o.rank_tol = t.rank;
  o.sym_tol = t.eps_sym_user;
  return o;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

std::string scalar(const json& v) {
  return v.is_string() ? v.get<std::string>() : v.dump();
}

std::string points_csv(const json& points) {
  std::ostringstream o;
  o << "kind,shape,angles,i_viterbo,m,index,note\n";
  for (const char* kind : {"violations", "witnesses", "check_failures"})
    for (const json& p : points[kind]) {
      std::string angles;
      for (const json& a : p["angles"]) angles += (angles.empty() ? "" : ";") + a.get<std::string>();
      const json& s = p["shape"];
      o << kind << "," << csv_escape(R8Shape{s["r"], s["s"], s["r_star"], s["r_zero"]}.to_string()) << ","
        << csv_escape(angles) << "," << p["i_viterbo"] << "," << p["m"] << "," << p["index"] << ","
        << csv_escape(p["note"]) << "\n";
    }
  return o.str();
}

struct Output {
  json report;
  std::string csv;
  std::string text;
  int status = kOk;
};

Output cmd_decompose(const RunConfig& cfg) {
  if (cfg.input_path.empty()) throw std::invalid_argument("decompose needs --input <matrix.json>");
  const JsonDocument doc = JsonDocument::from_file(cfg.input_path);
  const Matrix m = matrix_from_json(doc);
  const DecomposeOptions opt = decompose_options();
  const Decomposition d = cfg.characteristic ? extract_counts(m, opt) : decompose(m, opt);
  Output out;
  out.report = envelope(cfg, {{"input", cfg.input_path}, {"characteristic", cfg.characteristic}});
  out.report["result"] = to_json(d);
  const json c = to_json(d.counts);
  std::ostringstream csv, text;
  csv << "field,value\n";
  for (const char* f : {"p_minus", "p_zero", "p_plus", "q_minus", "q_zero", "q_plus", "r", "r_star",
                        "r_zero", "s", "hyperbolic_tail"})
    csv << f << "," << scalar(c[f]) << "\n";
  for (const char* f : {"theta_list", "alpha_list", "beta_list"})
    for (const json& a : c[f]) csv << f << "," << a["value"] << "\n";
  csv << "floquet_type," << to_string(d.spectrum.floquet_type) << "\n"
      << "nondegenerate," << (d.spectrum.nondegenerate ? "true" : "false") << "\n";
  text << "n = " << d.n << ", Floquet type " << to_string(d.spectrum.floquet_type)
       << (d.spectrum.nondegenerate ? ", non-degenerate" : ", degenerate") << "\n";
  text << "eigenvalue clusters:\n";
  for (const EigenCluster& cl : d.spectrum.clusters)
    text << "  " << std::setprecision(10) << cl.value.real() << (cl.value.imag() < 0 ? " - " : " + ")
         << std::abs(cl.value.imag()) << "i  x" << cl.multiplicity << "  " << to_string(cl.location) << "\n";
  text << "normal form counts:\n";
  for (const auto& [k, v] : c.items()) text << "  " << k << " = " << v.dump() << "\n";
  out.csv = csv.str();
  out.text = text.str();
  return out;
}

IndexSeed load_seed(const RunConfig& cfg) {
  if (cfg.input_path.empty()) throw std::invalid_argument(cfg.command + " needs --input <seed.json>");
  return seed_from_json(JsonDocument::from_file(cfg.input_path));
}

Output cmd_iterate(const RunConfig& cfg) {
  const IndexSeed seed = load_seed(cfg);
  const long long m_max = cfg.m_max.value_or(10);
  const std::vector<IterationResult> rows = iterate_table(seed, m_max);
  Output out;
  out.report = envelope(cfg, {{"input", cfg.input_path}, {"m_max", m_max}});
  out.report["seed"] = to_json(seed);
  json table = json::array();
  std::ostringstream csv, text;
  csv << "m,i_maslov,nullity,i_viterbo,good\n";
  text << std::setw(8) << "m" << std::setw(12) << "i_maslov" << std::setw(9) << "nullity" << std::setw(11)
       << "i_viterbo" << std::setw(6) << "good" << "\n";
  for (const IterationResult& r : rows) {
    table.push_back(to_json(r));
    csv << r.m << "," << r.maslov_index << "," << r.nullity << "," << r.viterbo_index << ","
        << (r.good ? "true" : "false") << "\n";
    text << std::setw(8) << r.m << std::setw(12) << r.maslov_index << std::setw(9) << r.nullity << std::setw(11)
         << r.viterbo_index << std::setw(6) << (r.good ? "yes" : "no") << "\n";
  }
  out.report["result"] = table;
  out.csv = csv.str();
  out.text = text.str();
  return out;
}

Output cmd_mean(const RunConfig& cfg) {
  const IndexSeed seed = load_seed(cfg);
  const long long m_max = cfg.m_max.value_or(100000);
  const double mean = mean_index(seed);
  const std::optional<SurdSum> exact = exact_mean_index(seed);
  const long long i_m = iterate_index(seed, m_max);
  const double ratio = static_cast<double>(i_m) / static_cast<double>(m_max);
  const double bound = (2.0 * seed.n + 2.0) / static_cast<double>(m_max);
  Output out;
  out.report = envelope(cfg, {{"input", cfg.input_path}, {"m_max", m_max}});
  json r = {{"mean_index", mean},
            {"mean_index_exact", exact ? json(exact->to_string()) : json(nullptr)},
            {"index_at_m_max", i_m},
            {"ratio", ratio},
            {"deviation", std::fabs(ratio - mean)},
            {"bound", bound},
            {"within_bound", std::fabs(ratio - mean) <= bound}};
  out.report["result"] = r;
  std::ostringstream csv, text;
  csv << "quantity,value\n";
  for (const auto& [k, v] : r.items()) csv << k << "," << scalar(v) << "\n";
  text << std::setprecision(15) << "mean index " << mean;
  if (exact) text << " = " << exact->to_string();
  text << "\ni(gamma," << m_max << ")/" << m_max << " = " << ratio << "  (|deviation| " << std::fabs(ratio - mean)
       << " vs bound " << bound << ")\n";
  out.csv = csv.str();
  out.text = text.str();
  if (std::fabs(ratio - mean) > bound) out.status = kViolations;
  return out;
}

Output cmd_oracle(const RunConfig& cfg) {
  const long long m_max = cfg.m_max.value_or(20);
  if (m_max > 1000) throw std::invalid_argument("oracle: --m-max above 1000 is not supported");
  std::vector<std::pair<std::string, IndexSeed>> seeds;
  if (!cfg.input_path.empty()) {
    seeds.emplace_back(cfg.input_path, load_seed(cfg));
  } else {
    Rng rng(cfg.rng_seed);
    SeedOptions so;
    so.resonance_horizon = static_cast<int>(m_max);
    for (int k = 0; k < cfg.seeds; ++k) seeds.emplace_back("random-" + std::to_string(k), random_seed(rng, so));
  }
  const CrossingCalibration cal = calibrate_crossing(reference_seed());
  Output out;
  out.report = envelope(cfg, {{"input", cfg.input_path},
                              {"m_max", m_max},
                              {"seeds", seeds.size()},
                              {"rng_seed", cfg.rng_seed},
                              {"samples_per_period", cfg.samples_per_period}});
  out.report["calibration"] = {{"offset", cal.offset}, {"reference", cal.reference}};
  json records = json::array(), seed_list = json::array();
  std::ostringstream csv, text;
  csv << "seed_id,quantity,m,formula_value,oracle_value,agree\n";
  long long disagreements = 0;
  for (const auto& [id, seed] : seeds) {
    seed_list.push_back({{"seed_id", id}, {"seed", to_json(seed)}});
    for (const OracleRecord& r : cross_check(seed, id, static_cast<int>(m_max), cal, cfg.samples_per_period)) {
      records.push_back(to_json(r));
      csv << csv_escape(r.seed_id) << "," << r.quantity << "," << r.m << "," << r.formula_value << ","
          << r.oracle_value << "," << (r.agree ? "true" : "false") << "\n";
      if (!r.agree) {
        ++disagreements;
        text << "MISMATCH " << r.seed_id << " " << r.quantity << " m=" << r.m << ": formula " << r.formula_value
             << ", oracle " << r.oracle_value << "\n";
      }
    }
  }
  out.report["seeds"] = seed_list;
  out.report["result"] = records;
  out.report["disagreements"] = disagreements;
  text << records.size() << " records over " << seeds.size() << " seeds, " << disagreements
       << " disagreements (calibration offset " << cal.offset << ")\n";
  out.csv = csv.str();
  out.text = text.str();
  if (disagreements) out.status = kViolations;
  return out;
}

std::string scan_text(const ScanReport& r, const std::string& banner) {
  std::ostringstream t;
  t << r.claim << "\n" << banner << "\n";
  t << "configs " << r.configs_scanned << ", points " << r.points_scanned << ", violations " << r.violations.size()
    << ", witnesses " << r.witness_count << ", check failures " << r.check_failures.size() << "\n";
  if (r.details.contains("per_shape")) {
    t << "per configuration:\n";
    for (const json& s : r.details["per_shape"]) {
      t << "  ";
      for (const auto& [k, v] : s.items()) t << k << "=" << scalar(v) << " ";
      t << "\n";
    }
  }
  if (r.details.contains("families")) {
    t << "families:\n";
    for (const json& f : r.details["families"]) {
      t << "  " << scalar(f["family"]) << " " << scalar(f["shape"]) << " turn sum " << scalar(f["turn_sum"])
        << ", good values " << f["good_values"].dump() << ", non-good values " << f["non_good_values"].dump()
        << "\n";
    }
  }
  for (const ScanPoint& p : r.violations)
    t << "VIOLATION " << p.shape.to_string() << " i(y)=" << p.i_viterbo << " m=" << p.m << " index=" << p.index
      << " " << p.note << "\n";
  for (const ScanPoint& p : r.check_failures)
    t << "CHECK FAILED " << p.shape.to_string() << " i(y)=" << p.i_viterbo << " m=" << p.m << " " << p.note << "\n";
  return t.str();
}

const char* kScanBanner =
    "Scope: verifies the index arithmetic only; the existence of infinitely many good iterates with the "
    "stated indices comes from a homological argument that is not checked here.";

Output cmd_scan_lemma31(const RunConfig& cfg) {
  Lemma31Options o;
  o.i_min = cfg.i_min;
  o.i_max = cfg.i_max;
  o.m_max = cfg.m_max.value_or(1000);
  o.angle_samples = cfg.angle_samples;
  o.enforce_hypothesis = cfg.enforce;
  o.rng_seed = cfg.rng_seed;
  o.workers = workers_from_env();
  const ScanReport r = lemma31_scan(o);
  std::cerr << "scan-lemma31: " << r.runtime_seconds << " s with " << o.workers << " workers\n";
  Output out;
  out.report = envelope(cfg, {{"i_min", o.i_min},
                              {"i_max", o.i_max},
                              {"m_max", o.m_max},
                              {"angle_samples", o.angle_samples},
                              {"enforce_hypothesis", o.enforce_hypothesis},
                              {"rng_seed", o.rng_seed}});
  out.report["banner"] = kScanBanner;
  out.report["result"] = to_json(r);
  out.csv = points_csv(out.report["result"]);
  out.text = scan_text(r, kScanBanner);
  if (cfg.enforce && (!r.violations.empty() || !r.check_failures.empty())) out.status = kViolations;
  return out;
}

Output cmd_scan_claim1(const RunConfig& cfg) {
  const long long m_max = cfg.m_max.value_or(10000);
  const ScanReport r = claim1_scan(default_zero_mean_families(), m_max, cfg.angle_samples, cfg.rng_seed);
  std::cerr << "scan-claim1: " << r.runtime_seconds << " s\n";
  Output out;
  out.report = envelope(cfg, {{"m_max", m_max}, {"r1_angle_samples", cfg.angle_samples}, {"rng_seed", cfg.rng_seed}});
  out.report["banner"] = kScanBanner;
  out.report["result"] = to_json(r);
  out.csv = points_csv(out.report["result"]);
  out.text = scan_text(r, kScanBanner);
  if (!r.violations.empty() || !r.check_failures.empty()) out.status = kViolations;
  return out;
}

Output cmd_enumerate(const RunConfig& cfg) {
  Output out;
  out.report = envelope(cfg, {{"budget", "r + s + 2 r_star + 2 r_zero = 3"}});
  json rows = json::array();
  std::ostringstream csv, text;
  csv << "r,s,r_star,r_zero\n";
  int k = 0;
  for (const R8Shape& s : enumerate_configs()) {
    rows.push_back({{"r", s.r}, {"s", s.s}, {"r_star", s.r_star}, {"r_zero", s.r_zero}});
    csv << s.r << "," << s.s << "," << s.r_star << "," << s.r_zero << "\n";
    text << ++k << ". " << s.to_string() << "\n";
  }
  out.report["result"] = rows;
  out.csv = csv.str();
  out.text = text.str();
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Symplectic normal forms, iteration indices and R8 index scans"};
  app.set_version_flag("--version", std::string(version));
  app.require_subcommand(1);

  RunConfig cfg;
  std::string format = "json";
  const std::map<std::string, Format> formats = {{"json", Format::json}, {"csv", Format::csv}, {"text", Format::text}};

  auto common = [&](CLI::App* sub, bool takes_input) {
    if (takes_input) sub->add_option("-i,--input", cfg.input_path, "input JSON file")->check(CLI::ExistingFile);
    sub->add_option("--tol", cfg.tol_overrides, "tolerance override name=value (repeatable)");
    sub->add_option("--format", format, "output format")->check(CLI::IsMember({"json", "csv", "text"}));
    sub->add_option("-o,--output", cfg.output_path, "write the report here instead of stdout");
  };
  auto m_max = [&](CLI::App* sub) {
    sub->add_option_function<long long>("--m-max", [&](long long v) { cfg.m_max = v; }, "largest iterate")
        ->check(CLI::PositiveNumber);
  };

  CLI::App* dec = app.add_subcommand("decompose", "normal-form invariants of a symplectic matrix");
  common(dec, true);
  dec->add_flag("--characteristic", cfg.characteristic, "require the N1(1,1) + U shape of a closed characteristic");

  CLI::App* it = app.add_subcommand("iterate", "index table of the iterates of a seed");
  common(it, true);
  m_max(it);

  CLI::App* mean = app.add_subcommand("mean", "mean index of a seed and its finite-m estimate");
  common(mean, true);
  m_max(mean);

  CLI::App* orc = app.add_subcommand("oracle", "cross-check formulas against numerical oracles");
  common(orc, true);
  m_max(orc);
  orc->add_option("--rng-seed", cfg.rng_seed, "seed for random test seeds");
  orc->add_option("--seeds", cfg.seeds, "number of random seeds when no input is given")->check(CLI::PositiveNumber);
  orc->add_option("--samples", cfg.samples_per_period, "path samples per period")->check(CLI::PositiveNumber);

  CLI::App* l31 = app.add_subcommand("scan-lemma31", "scan the R8 configurations for good iterates of index -5");
  common(l31, false);
  m_max(l31);
  l31->add_option("--rng-seed", cfg.rng_seed, "seed for the algebraic angle tuples");
  l31->add_option("--angle-samples", cfg.angle_samples, "angle tuples per configuration")
      ->check(CLI::PositiveNumber);
  l31->add_option("--i-min", cfg.i_min, "smallest i(y)");
  l31->add_option("--i-max", cfg.i_max, "largest i(y)");
  l31->add_flag("--enforce,!--relax", cfg.enforce, "exclude i(y) = -5 (default) or admit it");

  CLI::App* c1 = app.add_subcommand("scan-claim1", "check the mean-index-zero families");
  common(c1, false);
  m_max(c1);
  c1->add_option("--rng-seed", cfg.rng_seed, "seed for the r = 1 angle samples");
  c1->add_option("--angle-samples", cfg.angle_samples, "r = 1 angle samples")->check(CLI::PositiveNumber);

  CLI::App* en = app.add_subcommand("enumerate", "list the R8 block configurations");
  common(en, false);

  CLI11_PARSE(app, argc, argv);
  cfg.format = formats.at(format);
  cfg.command = app.get_subcommands().front()->get_name();

  try {
    apply_tolerances(cfg);
    Output out;
    if (cfg.command == "decompose") out = cmd_decompose(cfg);
    else if (cfg.command == "iterate") out = cmd_iterate(cfg);
    else if (cfg.command == "mean") out = cmd_mean(cfg);
    else if (cfg.command == "oracle") out = cmd_oracle(cfg);
    else if (cfg.command == "scan-lemma31") out = cmd_scan_lemma31(cfg);
    else if (cfg.command == "scan-claim1") out = cmd_scan_claim1(cfg);
    else out = cmd_enumerate(cfg);

    std::string body;
    switch (cfg.format) {
      case Format::json: body = out.report.dump(2) + "\n"; break;
      case Format::csv: body = out.csv; break;
      case Format::text: body = out.text; break;
    }
    if (cfg.output_path.empty()) {
      std::cout << body;
    } else {
      std::ofstream f(cfg.output_path, std::ios::binary);
      if (!f) throw std::invalid_argument("cannot write '" + cfg.output_path + "'");
      f << body;
    }
    return out.status;
  } catch (const SchemaError& e) {
    std::cerr << "sympidx: invalid input: " << e.what() << "\n";
  } catch (const PrecisionError& e) {
    std::cerr << "sympidx: precision: " << e.what() << "\n";
  } catch (const std::exception& e) {
    std::cerr << "sympidx: " << e.what() << "\n";
  }
  return kInputError;
}
