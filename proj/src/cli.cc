// Copyright 2026 The cvlearn Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cvlearn/cli.h"

#include <openssl/evp.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "cvlearn/bounds.h"
#include "cvlearn/error.h"
#include "cvlearn/estimator.h"
#include "cvlearn/hypothesis.h"
#include "cvlearn/measurement.h"
#include "cvlearn/parallel.h"
#include "cvlearn/process.h"
#include "cvlearn/reconstruction.h"
#include "cvlearn/records_io.h"
#include "cvlearn/trace.h"

namespace cvlearn {

namespace fs = std::filesystem;
using ojson = nlohmann::ordered_json;

namespace {

constexpr const char* kVersion = "0.1.0";

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw InvalidInput("cannot open " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  require(static_cast<bool>(f), "cannot open " + path.string() + " for writing");
  f << content;
}

// Per-command context: resolved config, hashed inputs, output directory.
struct Run {
  std::string command;
  ojson config;
  ojson inputs = ojson::object();
  ojson outputs = ojson::object();
  fs::path out_dir;
  std::uint64_t seed = 0;
  std::ostream* out = nullptr;

  bool has(const char* key) const { return !config.at(key).is_null(); }
  double num(const char* key) const { return config.at(key).get<double>(); }
  std::size_t count(const char* key) const {
    const double v = config.at(key).get<double>();
    require(v >= 0.0 && v == std::floor(v), std::string(key) + " must be a nonnegative integer");
    return static_cast<std::size_t>(v);
  }
  std::string str(const char* key) const { return config.at(key).get<std::string>(); }
  bool flag(const char* key) const { return config.at(key).get<bool>(); }
  bool json_format() const { return str("format") == "json"; }

  std::string input(const char* key) {
    const std::string path = str(key);
    inputs[path] = git_blob_sha1_file(path);
    return path;
  }

  void emit(const std::string& name, const std::string& content) {
    write_file(out_dir / name, content);
    outputs[name] = git_blob_sha1(content);
  }
};

// A small table written as CSV or as a JSON array of row objects.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<ojson>> rows;

  std::string render(bool as_json) const {
    if (as_json) {
      ojson arr = ojson::array();
      for (const auto& r : rows) {
        ojson o;
        for (std::size_t i = 0; i < columns.size(); ++i) o[columns[i]] = r[i];
        arr.push_back(o);
      }
      return arr.dump(2) + "\n";
    }
    std::ostringstream ss;
    for (std::size_t i = 0; i < columns.size(); ++i) ss << (i ? "," : "") << columns[i];
    ss << '\n';
    for (const auto& r : rows) {
      for (std::size_t i = 0; i < r.size(); ++i) {
        if (i) ss << ',';
        const ojson& v = r[i];
        if (v.is_null()) continue;
        if (v.is_number_float()) ss << format_double(v.get<double>());
        else if (v.is_string()) ss << v.get<std::string>();
        else ss << v.dump();
      }
      ss << '\n';
    }
    return ss.str();
  }
};

ojson nullable(double v) { return std::isfinite(v) ? ojson(v) : ojson(nullptr); }

ojson to_ordered(const nlohmann::json& j) { return ojson::parse(j.dump()); }

const ojson kCommon = {
    {"seed", nullptr}, {"threads", 0}, {"out", "."}, {"format", "csv"}};

const ojson kSimulation = {
    {"process", "three_peak"}, {"n", 1},          {"N", 1000},
    {"sigma", 0.3},            {"epsilon0", 0.25}, {"gamma", nullptr},
    {"alpha0", nullptr},       {"squeezing_db", 0.0}, {"transmissivity", 1.0},
    {"drift", nullptr},        {"noise_scale", 1.0},  {"pilot_period", 0},
    {"pilot_amplitude", 10.0}};

void merge(ojson& into, const ojson& from) {
  for (const auto& [k, v] : from.items()) into[k] = v;
}

// ---------------------------------------------------------------- builders

ProcessSpec build_process(const Run& r) {
  const std::string kind = r.str("process");
  const std::size_t n = r.count("n");
  require(n >= 1, "n must be positive");
  if (kind == "three_peak") {
    ComplexVec gamma = r.has("gamma") ? complex_vec_from_json(r.config.at("gamma"))
                                      : ComplexVec::filled(n, Complex(0.3, 0.3));
    require(gamma.size() == n, "gamma must have n entries");
    return ProcessSpec::three_peak(std::move(gamma), r.num("sigma"), r.num("epsilon0"));
  }
  if (kind == "gaussian") return ProcessSpec::gaussian(n, r.num("sigma"));
  if (kind == "fixed") {
    require(r.has("alpha0"), "a fixed process needs alpha0");
    ComplexVec a = complex_vec_from_json(r.config.at("alpha0"));
    require(a.size() == n, "alpha0 must have n entries");
    return ProcessSpec::fixed(std::move(a));
  }
  throw InvalidInput("unknown process '" + kind + "'");
}

SqueezingSpec build_squeezing(const Run& r) {
  SqueezingSpec s{r.num("squeezing_db"), r.num("transmissivity")};
  s.validate();
  return s;
}

DriftModel build_drift(const Run& r) {
  DriftModel d;
  if (r.has("drift")) d.affine = affine_from_json(r.config.at("drift"));
  d.noise_scale = r.num("noise_scale");
  d.validate();
  return d;
}

struct Simulated {
  RecordMetadata meta;
  std::vector<BellRecord> records;
};

Simulated simulate_from_config(const Run& r) {
  Simulated s;
  s.meta.process = build_process(r);
  s.meta.records = r.count("N");
  require(s.meta.records >= 1, "N must be positive");
  const SqueezingSpec sq = build_squeezing(r);
  s.meta.squeezing_db = sq.squeezing_db;
  s.meta.transmissivity = sq.transmissivity;
  s.meta.r_eff = effective_squeezing(sq);
  s.meta.drift = build_drift(r);
  s.meta.seed = r.seed;
  s.meta.pilot_period = r.count("pilot_period");
  s.meta.pilot_amplitude = r.num("pilot_amplitude");
  s.records = simulate_bell_batch(s.meta.process, s.meta.r_eff, s.meta.drift,
                                  s.meta.records, r.seed);
  if (s.meta.pilot_period > 0) {
    s.records = inject_pilots(s.records, s.meta.pilot_period, s.meta.pilot_amplitude,
                              r.seed, s.meta.r_eff, s.meta.drift);
  }
  return s;
}

AdaptiveSchedule build_schedule(const Run& r) {
  AdaptiveSchedule s;
  s.repeats = static_cast<int>(r.count("repeats"));
  s.max_rounds = static_cast<int>(r.count("max_rounds"));
  s.keep_last = std::min(s.keep_last, s.max_rounds - 10);
  s.validate();
  return s;
}

std::vector<double> number_list(const ojson& v, const char* key) {
  std::vector<double> out;
  if (v.is_array()) {
    for (const auto& x : v) out.push_back(x.get<double>());
  } else {
    out.push_back(v.get<double>());
  }
  require(!out.empty(), std::string(key) + " must not be empty");
  return out;
}

// ---------------------------------------------------------------- commands

void cmd_simulate(Run& r) {
  const Simulated s = simulate_from_config(r);
  std::ostringstream csv;
  write_records_csv(csv, s.records);
  r.emit("records.csv", csv.str());
  r.emit("metadata.json", to_ordered(to_json(s.meta)).dump(2) + "\n");
  *r.out << "wrote " << s.records.size() << " records (" << s.meta.records
         << " data) x " << s.meta.process.modes() << " modes, r_eff="
         << format_double(s.meta.r_eff) << "\n";
}

void cmd_reconstruct(Run& r, const nlohmann::json& user) {
  Simulated s;
  if (r.has("records")) {
    s.records = read_records_csv(r.input("records"));
    if (r.has("metadata")) {
      s.meta = record_metadata_from_json(nlohmann::json::parse(read_file(r.input("metadata"))));
    } else {
      if (!user.contains("process")) {
        throw InvalidInput("reconstruct needs a truth spec: give metadata or process");
      }
      s.meta.process = build_process(r);
      const SqueezingSpec sq = build_squeezing(r);
      s.meta.r_eff = effective_squeezing(sq);
      s.meta.pilot_amplitude = r.num("pilot_amplitude");
    }
  } else {
    s = simulate_from_config(r);
  }
  const ProcessSpec& truth_process = s.meta.process;
  const std::size_t n = truth_process.modes();
  const ComplexVec direction = r.has("direction")
                                   ? complex_vec_from_json(r.config.at("direction"))
                                   : ComplexVec::filled(n, Complex(1.0, 1.0));
  require(direction.size() == n, "direction must have n entries");

  Affine2 affine;
  bool has_pilots = false;
  for (const auto& rec : s.records) has_pilots = has_pilots || rec.pilot_tag != PilotTag::kNone;
  if (r.flag("use_pilots") && has_pilots) {
    affine = estimate_affine(s.records, s.meta.pilot_amplitude);
  }

  ReconSpec spec;
  spec.epsilon = r.num("epsilon");
  spec.delta = r.num("delta");
  spec.b_max = r.num("b_max");
  spec.grid_step = r.num("grid_step");
  spec.schedule = build_schedule(r);
  spec.validate();
  const std::vector<double> grid = spec.grid();
  const auto slice = reconstruct_slice(s.records, direction, grid, s.meta.r_eff, affine);
  const auto truth = truth_on_slice(truth_process, direction, grid);

  Table t{{"b", "re", "im", "truth_re", "truth_im", "abs_err"}, {}};
  double max_err = 0.0;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const double err = std::abs(slice[k].value - truth[k]);
    max_err = std::max(max_err, err);
    t.rows.push_back({grid[k], slice[k].value.real(), slice[k].value.imag(),
                      truth[k].real(), truth[k].imag(), err});
  }
  r.emit(r.json_format() ? "slice.json" : "slice.csv", t.render(r.json_format()));
  const bool close = eps_close_check(std::span<const SlicePoint>(slice), truth, spec.epsilon);
  *r.out << "slice: " << grid.size() << " points, max |err| = " << format_double(max_err)
         << (close ? " (eps-close)" : " (not eps-close)") << "\n";

  if (r.flag("complexity")) {
    const SlicePool pool = SlicePool::from_records(s.records, direction, s.meta.r_eff, affine);
    const ComplexityEstimate est = sample_complexity_recon(pool, spec, truth, r.seed);
    ojson j = to_ordered(to_json(est));
    j["hoeffding_initial"] =
        hoeffding_upper(s.meta.r_eff, spec.b_max * spec.b_max * pool.dual_norm_sq(),
                        spec.epsilon, spec.delta).value;
    j["affine"] = to_ordered(affine_to_json(affine));
    r.emit("complexity.json", j.dump(2) + "\n");
    *r.out << "complexity: mean_N = " << format_double(est.mean_N)
           << ", std = " << format_double(est.std_N) << "\n";
  }
}

void cmd_hypotest(Run& r) {
  GameSpec spec;
  spec.K = static_cast<int>(r.count("K"));
  spec.n = r.count("n");
  spec.kappa = r.num("kappa");
  spec.sigma = r.num("sigma");
  spec.epsilon0 = r.num("epsilon0");
  spec.threshold = r.num("threshold");
  spec.N = r.count("N");
  spec.balanced = r.flag("balanced");
  spec.statistic = statistic_from_string(r.str("statistic"));
  spec.validate();
  const SqueezingSpec sq = build_squeezing(r);
  const double r_eff = effective_squeezing(sq);
  const std::size_t pool_size = r.has("pool") ? r.count("pool") : 2 * spec.N;
  const int repeats = static_cast<int>(r.count("repeats"));

  const GameInstance game = deal(spec, r.seed);
  const auto pools = simulate_game_pools(game, r_eff, DriftModel{}, pool_size, r.seed);
  const GameOutcome outcome = success_probability(game, pools, spec.N, repeats, spec, r.seed);
  r.emit("transcript.json", game_transcript(spec, game, outcome, r.flag("blind")).dump(2) + "\n");

  const BoundValue nc = equivalent_classical_N(std::max(0.5, outcome.p_bar), spec.epsilon0,
                                               spec.kappa, spec.sigma, static_cast<long>(spec.n));
  const double pc_excess = classical_success_excess(static_cast<double>(spec.N), spec.epsilon0,
                                                    spec.kappa, spec.sigma,
                                                    static_cast<long>(spec.n));
  Table t{{"n", "squeezing_db", "r_eff", "N", "P_bar", "delta_P", "raw_success",
           "N_c", "N_c_log10", "P_c", "P_c_excess"},
          {}};
  t.rows.push_back({spec.n, sq.squeezing_db, nullable(r_eff), spec.N, outcome.p_bar,
                    nullable(outcome.delta_p), outcome.raw_success, nullable(nc.value),
                    nullable(nc.log10), 0.5 + pc_excess, pc_excess});
  r.emit(r.json_format() ? "summary.json" : "summary.csv", t.render(r.json_format()));
  *r.out << "P_bar = " << format_double(outcome.p_bar) << " +- "
         << (outcome.delta_p_defined ? format_double(outcome.delta_p) : std::string("undefined"))
         << ", raw success = " << format_double(outcome.raw_success) << "\n";

  if (r.flag("complexity")) {
    const ComplexityEstimate est =
        sample_complexity_hypo(game, pools, spec, r.num("p_target"), r_eff, r.seed,
                               build_schedule(r), r.num("initial_radius_sq"));
    r.emit("complexity.json", to_ordered(to_json(est)).dump(2) + "\n");
    *r.out << "complexity: mean_N = " << format_double(est.mean_N)
           << ", std = " << format_double(est.std_N) << "\n";
  }
}

void cmd_bounds(Run& r) {
  const auto ns = number_list(r.config.at("n"), "n");
  const auto kappas = number_list(r.config.at("kappa"), "kappa");
  const auto dbs = number_list(r.config.at("squeezing_db"), "squeezing_db");
  const long m = static_cast<long>(r.count("m"));
  const double eps = r.num("epsilon"), delta = r.num("delta"), eps0 = r.num("epsilon0");
  const double sigma = r.num("sigma"), p_suc = r.num("p_suc"), N = r.num("N");
  const double rate = r.num("mode_rate_hz");
  Table t{{"n", "kappa", "squeezing_db", "r_eff", "hoeffding_log10",
           "classical_lower_sigma0_log10", "classical_lower_sigma_log10",
           "sigma_bound_applicable", "N_c", "N_c_log10", "N_c_time", "P_c_excess"},
          {}};
  for (double nd : ns) {
    require(nd >= 1 && nd == std::floor(nd), "n must be positive integers");
    const long n = static_cast<long>(nd);
    for (double kappa : kappas) {
      for (double db : dbs) {
        SqueezingSpec sq{db, r.num("transmissivity")};
        sq.validate();
        const double r_eff = effective_squeezing(sq);
        const BoundValue h = hoeffding_upper(r_eff, kappa * m * n, eps, delta);
        const ClassicalLowerBound l0 = classical_lower(m, n, kappa, eps, 0.0);
        const ClassicalLowerBound ls = classical_lower(m, n, kappa, eps, sigma);
        const BoundValue nc = equivalent_classical_N(p_suc, eps0, kappa, sigma, n);
        const ojson time = nc.value > 0.0 ? ojson(format_duration(acquisition_time(nc.value, n, rate)))
                                          : ojson("0 seconds");
        t.rows.push_back({n, kappa, db, nullable(r_eff), h.log10, l0.bound.log10,
                          ls.bound.log10, ls.applicable, nullable(nc.value),
                          nullable(nc.log10), time,
                          classical_success_excess(N, eps0, kappa, sigma, n)});
      }
    }
  }
  const std::string text = t.render(r.json_format());
  r.emit(r.json_format() ? "bounds.json" : "bounds.csv", text);
  *r.out << text;
}

void cmd_trace(Run& r) {
  ModeFunctionSpec spec;
  spec.sideband_hz = r.num("sideband_hz");
  spec.envelope_kappa_rad_s = r.num("envelope_kappa_rad_s");
  spec.mode_duration_s = r.num("mode_duration_s");
  spec.validate();
  TimeTrace trace;
  double delay = 0.0;
  if (r.has("trace")) {
    const std::string path = r.input("trace");
    if (path.size() >= 4 && path.substr(path.size() - 4) == ".csv") {
      std::ifstream f(path);
      trace = read_trace_csv(f);
    } else {
      trace = read_trace(path);
    }
    delay = r.has("delay_s") ? r.num("delay_s") : estimate_delay(trace, spec);
  } else {
    std::vector<Complex> d;
    if (r.has("displacements")) {
      for (const auto& e : r.config.at("displacements")) {
        require(e.is_array() && e.size() == 2, "displacements are [re, im] pairs");
        d.emplace_back(e[0].get<double>(), e[1].get<double>());
      }
    } else {
      d.assign(r.count("modes"), Complex{});
    }
    require(!d.empty(), "trace synthesis needs displacements or modes > 0");
    const std::string q = r.str("quadrature");
    require(q == "x" || q == "p", "quadrature must be x or p");
    const double rate = r.num("sample_rate_hz");
    const double noise = r.has("noise_std") ? r.num("noise_std") : vacuum_noise_std(spec, rate);
    const Affine2 xt = r.has("crosstalk") ? affine_from_json(r.config.at("crosstalk"))
                                          : Affine2::identity();
    Engine rng = make_stream(r.seed, StreamSalt::kTrace);
    trace = synth_trace(d, q == "x" ? Quadrature::kX : Quadrature::kP, spec, noise,
                        r.num("synth_delay_s"), xt, rng, rate);
    delay = r.has("delay_s") ? r.num("delay_s") : r.num("synth_delay_s");
    if (r.flag("write_trace")) {
      std::ostringstream ss;
      write_trace(ss, trace);
      r.emit("trace.bin", ss.str());
    }
  }
  const auto q = extract_quadratures(trace, spec, delay, r.num("vacuum_scale"));
  Table t{{"mode_index", "q"}, {}};
  double mean = 0.0;
  for (std::size_t k = 0; k < q.size(); ++k) {
    t.rows.push_back({k, q[k]});
    mean += q[k];
  }
  r.emit(r.json_format() ? "quadratures.json" : "quadratures.csv", t.render(r.json_format()));
  mean = q.empty() ? 0.0 : mean / static_cast<double>(q.size());
  double var = 0.0;
  for (double x : q) var += (x - mean) * (x - mean);
  if (q.size() > 1) var /= static_cast<double>(q.size() - 1);
  *r.out << "extracted " << q.size() << " quadratures, delay = " << format_double(delay)
         << " s, mean = " << format_double(mean) << ", variance = " << format_double(var)
         << "\n";
}

// Parses a --set value as JSON, falling back to a plain string.
ojson parse_value(const std::string& text) {
  try {
    return ojson::parse(text);
  } catch (const nlohmann::json::exception&) {
    return ojson(text);
  }
}

}  // namespace

std::string git_blob_sha1(const std::string& content) {
  const std::string header = "blob " + std::to_string(content.size()) + '\0';
  const std::string blob = header + content;
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  require(EVP_Digest(blob.data(), blob.size(), digest, &len, EVP_sha1(), nullptr) == 1,
          "SHA-1 digest failed");
  std::ostringstream ss;
  for (unsigned int i = 0; i < len; ++i) {
    ss << std::hex << std::setw(2) << std::setfill('0') << int(digest[i]);
  }
  return ss.str();
}

std::string git_blob_sha1_file(const std::string& path) {
  return git_blob_sha1(read_file(path));
}

ojson default_config(const std::string& command) {
  ojson c = kCommon;
  if (command == "simulate") {
    merge(c, kSimulation);
  } else if (command == "reconstruct") {
    merge(c, kSimulation);
    merge(c, ojson{{"n", 16},           {"N", 100000},      {"records", nullptr},
                   {"metadata", nullptr}, {"direction", nullptr}, {"epsilon", 0.24},
                   {"delta", 1.0 / 3.0}, {"b_max", 0.3},     {"grid_step", 0.01},
                   {"complexity", true}, {"repeats", 25},    {"max_rounds", 35},
                   {"use_pilots", true}});
  } else if (command == "hypotest") {
    merge(c, ojson{{"n", 20},        {"K", 16},           {"kappa", 0.2},
                   {"sigma", 0.3},   {"epsilon0", 0.25},  {"threshold", 0.25},
                   {"N", 100000},    {"balanced", true},  {"statistic", "im"},
                   {"squeezing_db", 0.0}, {"transmissivity", 1.0}, {"pool", nullptr},
                   {"repeats", 25},  {"max_rounds", 35},  {"p_target", 2.0 / 3.0},
                   {"complexity", false}, {"initial_radius_sq", 0.0}, {"blind", false}});
  } else if (command == "bounds") {
    merge(c, ojson{{"n", {20, 40, 60, 100, 120}}, {"m", 1}, {"kappa", {0.2}},
                   {"squeezing_db", {0.0}}, {"transmissivity", 1.0}, {"epsilon", 0.24},
                   {"delta", 1.0 / 3.0}, {"epsilon0", 0.25}, {"sigma", 0.3},
                   {"p_suc", 2.0 / 3.0}, {"N", 100000}, {"mode_rate_hz", 1e6}});
  } else if (command == "trace") {
    const ModeFunctionSpec m;
    merge(c, ojson{{"trace", nullptr},       {"delay_s", nullptr},
                   {"vacuum_scale", 1.0},    {"displacements", nullptr},
                   {"modes", 0},             {"quadrature", "x"},
                   {"noise_std", nullptr},   {"synth_delay_s", 0.0},
                   {"crosstalk", nullptr},   {"sample_rate_hz", kDefaultSampleRateHz},
                   {"sideband_hz", m.sideband_hz},
                   {"envelope_kappa_rad_s", m.envelope_kappa_rad_s},
                   {"mode_duration_s", m.mode_duration_s},
                   {"write_trace", false}});
  } else {
    throw InvalidInput("unknown command '" + command + "'");
  }
  return c;
}

ojson resolve_config(const std::string& command, const nlohmann::json& user) {
  ojson c = default_config(command);
  if (user.is_null()) return c;
  require(user.is_object(), "config must be a flat JSON object");
  for (const auto& [key, value] : user.items()) {
    if (key == "_manifest") continue;
    if (!c.contains(key)) {
      throw InvalidInput("unknown config key '" + key + "' for " + command);
    }
    c[key] = to_ordered(value);
  }
  return c;
}

int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Entanglement-enhanced learning of displacement processes"};
  app.require_subcommand(1);
  std::string config_path;
  std::uint64_t seed = 0;
  unsigned threads = 0;
  std::string out_dir, format;
  std::vector<std::string> sets;
  app.add_option("--config", config_path, "flat JSON config (a manifest also works)");
  auto* seed_opt = app.add_option("--seed", seed, "master seed");
  auto* threads_opt = app.add_option("--threads", threads, "thread cap (0 = all cores)");
  auto* out_opt = app.add_option("--out", out_dir, "output directory");
  auto* format_opt = app.add_option("--format", format, "table format")
                         ->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--set", sets, "override a config key: KEY=VALUE (VALUE is JSON)");
  for (const char* name : {"simulate", "reconstruct", "hypotest", "bounds", "trace"}) {
    app.add_subcommand(name)->fallthrough();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    const std::string command = app.get_subcommands().front()->get_name();
    nlohmann::json user;
    std::string config_text;
    if (!config_path.empty()) {
      config_text = read_file(config_path);
      user = nlohmann::json::parse(config_text);
    }
    Run r;
    r.command = command;
    r.out = &out;
    r.config = resolve_config(command, user);
    if (!config_path.empty()) r.inputs[config_path] = git_blob_sha1(config_text);
    for (const auto& s : sets) {
      const auto eq = s.find('=');
      require(eq != std::string::npos, "--set expects KEY=VALUE");
      const std::string key = s.substr(0, eq);
      require(r.config.contains(key), "unknown config key '" + key + "' for " + command);
      r.config[key] = parse_value(s.substr(eq + 1));
      user[key] = nlohmann::json::parse(r.config[key].dump());
    }
    if (*seed_opt) r.config["seed"] = seed;
    if (*threads_opt) r.config["threads"] = threads;
    if (*out_opt) r.config["out"] = out_dir;
    if (*format_opt) r.config["format"] = format;
    require(r.str("format") == "csv" || r.str("format") == "json", "format must be csv or json");

    if (r.config["seed"].is_null()) {
      r.config["seed"] = entropy_seed();
      err << "no seed given; using seed " << r.config["seed"].get<std::uint64_t>() << "\n";
    }
    r.seed = r.config["seed"].get<std::uint64_t>();
    set_thread_limit(static_cast<unsigned>(r.count("threads")));
    r.out_dir = r.str("out");
    fs::create_directories(r.out_dir);

    if (command == "simulate") cmd_simulate(r);
    else if (command == "reconstruct") cmd_reconstruct(r, user);
    else if (command == "hypotest") cmd_hypotest(r);
    else if (command == "bounds") cmd_bounds(r);
    else cmd_trace(r);

    ojson manifest = r.config;
    manifest["_manifest"] = {{"command", command}, {"version", kVersion},
                             {"seed", r.seed},     {"inputs", r.inputs},
                             {"outputs", r.outputs}};
    write_file(r.out_dir / "manifest.json", manifest.dump(2) + "\n");
    return kExitOk;
  } catch (const Inapplicable& e) {
    err << "inapplicable: " << e.what() << "\n";
    return kExitInapplicable;
  } catch (const InvalidInput& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const nlohmann::json::exception& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace cvlearn
