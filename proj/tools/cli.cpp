// Copyright 2026 The unli Authors.
// SPDX-License-Identifier: Apache-2.0

#include "cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "unli/format.hpp"
#include "unli/loss_integral.hpp"
#include "unli/mc.hpp"
#include "unli/trial.hpp"
#include "unli/voi.hpp"

namespace unli::cli {
namespace {

using json = nlohmann::json;

/// Flags shared by every subcommand.
struct OutputFlags {
  bool json = false;
  bool round3 = false;

  NumberFormat format() const {
    return round3 ? NumberFormat::fixed3 : NumberFormat::significant10;
  }
};

void add_output_flags(CLI::App* sub, OutputFlags& flags) {
  sub->add_flag("--json", flags.json, "Emit a JSON record instead of plain text");
  sub->add_flag("--round-3", flags.round3, "Print numbers with three decimals");
}

/// One result of a command: echo of the command and its inputs, the results,
/// and the seed of anything stochastic.
struct OutputRecord {
  std::string command;
  json inputs = json::object();
  json results = json::object();
  std::optional<std::uint64_t> seed = std::nullopt;

  json to_json() const {
    json j{{"command", command}, {"inputs", inputs}, {"results", results}};
    if (seed) j["seed"] = *seed;
    return j;
  }
};

void emit(std::ostream& out, const OutputRecord& record) { out << record.to_json().dump(2) << '\n'; }

/// Opens `path` for writing, or returns nullptr for "-" (stdout).
std::unique_ptr<std::ofstream> open_output(const std::string& path) {
  if (path == "-") return nullptr;
  auto file = std::make_unique<std::ofstream>(path);
  if (!*file) throw IoError("cannot open '" + path + "' for writing");
  return file;
}

void finish(std::ofstream* file, const std::string& path) {
  if (file == nullptr) return;
  file->flush();
  if (!*file) throw IoError("write to '" + path + "' failed");
}

class MissingSeed : public std::domain_error {
 public:
  MissingSeed() : std::domain_error("--seed is required for stochastic computations") {}
};

// ----------------------------------------------------------------- unli1d

struct Unli1dArgs {
  double mu = 0.0;
  double sd = 0.0;
  OutputFlags out;
};

void setup_unli1d(CLI::App& app, Unli1dArgs& a) {
  auto* sub = app.add_subcommand("unli1d", "E[max(Y, 0)] for Y ~ N(mu, sd^2)");
  sub->add_option("--mu", a.mu, "Mean")->required();
  sub->add_option("--sd", a.sd, "Standard deviation (> 0)")->required();
  add_output_flags(sub, a.out);
}

void run_unli1d(const Unli1dArgs& a, std::ostream& out) {
  const double value = unli_1d(a.mu, a.sd);
  if (a.out.json) {
    OutputRecord r{"unli1d"};
    r.inputs = {{"mu", a.mu}, {"sd", a.sd}};
    r.results = {{"value", value}};
    emit(out, r);
  } else {
    out << format_number(value, a.out.format()) << '\n';
  }
}

// ----------------------------------------------------------------- unli2d

struct BvnFlags {
  double mu1 = 0.0, mu2 = 0.0, sd1 = 0.0, sd2 = 0.0, rho = 0.0;

  BvnParams params() const { return {mu1, mu2, sd1, sd2, rho}; }
  json to_json() const {
    return {{"mu1", mu1}, {"mu2", mu2}, {"sd1", sd1}, {"sd2", sd2}, {"rho", rho}};
  }
};

std::vector<CLI::Option*> add_bvn_flags(CLI::App* sub, BvnFlags& b) {
  return {sub->add_option("--mu1", b.mu1, "Mean of Y1"), sub->add_option("--mu2", b.mu2, "Mean of Y2"),
          sub->add_option("--sd1", b.sd1, "Standard deviation of Y1"),
          sub->add_option("--sd2", b.sd2, "Standard deviation of Y2"),
          sub->add_option("--rho", b.rho, "Correlation of Y1 and Y2")};
}

struct Unli2dArgs {
  BvnFlags bvn;
  bool breakdown = false;
  OutputFlags out;
};

void setup_unli2d(CLI::App& app, Unli2dArgs& a) {
  auto* sub = app.add_subcommand("unli2d", "E[max(Y1, Y2, 0)] for bivariate normal (Y1, Y2)");
  for (CLI::Option* opt : add_bvn_flags(sub, a.bvn)) opt->required();
  sub->add_flag("--breakdown", a.breakdown, "Also print the four closed-form terms");
  add_output_flags(sub, a.out);
}

void run_unli2d(const Unli2dArgs& a, std::ostream& out) {
  const Unli2dBreakdown b = unli_2d(a.bvn.params());
  if (a.out.json) {
    OutputRecord r{"unli2d"};
    r.inputs = a.bvn.to_json();
    r.inputs["breakdown"] = a.breakdown;
    r.results = {{"total", b.total}};
    if (a.breakdown) {
      r.results.update({{"u12", b.u12}, {"v12", b.v12}, {"u21", b.u21}, {"v21", b.v21}});
    }
    emit(out, r);
    return;
  }
  const NumberFormat f = a.out.format();
  if (a.breakdown) {
    out << "u12 " << format_number(b.u12, f) << '\n'
        << "v12 " << format_number(b.v12, f) << '\n'
        << "u21 " << format_number(b.u21, f) << '\n'
        << "v21 " << format_number(b.v21, f) << '\n'
        << "total " << format_number(b.total, f) << '\n';
  } else {
    out << format_number(b.total, f) << '\n';
  }
}

// ----------------------------------------------------------------- simgrid

struct SimgridArgs {
  std::size_t n = 100'000;
  std::uint64_t seed = 0;
  CLI::Option* seed_opt = nullptr;
  std::string out_path;
  bool grid_default = false;
  unsigned workers = 0;
  OutputFlags out;
};

void setup_simgrid(CLI::App& app, SimgridArgs& a) {
  auto* sub = app.add_subcommand("simgrid", "Closed form vs Monte Carlo over the factorial grid");
  sub->add_option("--n", a.n, "Monte Carlo draws per cell")->capture_default_str();
  a.seed_opt = sub->add_option("--seed", a.seed, "Master seed");
  sub->add_option("--out", a.out_path, "CSV destination ('-' for stdout)")->required();
  sub->add_flag("--grid-default", a.grid_default,
                "Use the default 3x3x2x2x7 grid (currently the only grid)");
  sub->add_option("--workers", a.workers, "Worker threads (0 = all cores)");
  add_output_flags(sub, a.out);
}

void run_simgrid(const SimgridArgs& a, std::ostream& out) {
  if (a.seed_opt->count() == 0) throw MissingSeed();
  const GridSpec grid = GridSpec::factorial_default();
  const std::vector<GridRow> rows = run_grid(grid, a.n, a.seed, a.workers);

  auto file = open_output(a.out_path);
  std::ostream& dest = file ? *file : out;
  write_grid_csv(dest, rows, a.out.format());
  finish(file.get(), a.out_path);

  if (a.out_path == "-") return;
  double worst = 0.0;
  std::size_t within = 0;
  for (const GridRow& r : rows) {
    const double z = std::abs(r.diff) / r.mc_se;
    worst = std::max(worst, z);
    within += z <= 4.0;
  }
  if (a.out.json) {
    OutputRecord r{"simgrid"};
    r.inputs = {{"n", a.n}, {"seed", a.seed}, {"out", a.out_path}, {"grid_default", a.grid_default}};
    r.results = {{"rows", rows.size()}, {"within_4se", within}, {"max_abs_diff_over_se", worst}};
    r.seed = a.seed;
    emit(out, r);
  } else {
    out << "wrote " << rows.size() << " rows to " << a.out_path << "; " << within
        << " within 4 SE, max |diff|/SE " << format_number(worst) << '\n';
  }
}

// ----------------------------------------------------------------- evpi

struct TrialFlags {
  std::string path;
  std::string ref_arm;
  CLI::Option* path_opt = nullptr;
};

struct BootstrapFlags {
  std::string method = "closed";
  std::size_t replicates = 1000;
  std::uint64_t seed = 0;
  CLI::Option* seed_opt = nullptr;

  bool bootstrap() const { return method == "bootstrap"; }
};

void add_bootstrap_flags(CLI::App* sub, BootstrapFlags& b) {
  sub->add_option("--method", b.method, "closed or bootstrap")
      ->check(CLI::IsMember({"closed", "bootstrap"}))
      ->capture_default_str();
  sub->add_option("--boot-b", b.replicates, "Bootstrap replicates")->capture_default_str();
  b.seed_opt = sub->add_option("--seed", b.seed, "Seed (required for bootstrap)");
}

struct EvpiArgs {
  BvnFlags bvn;
  std::vector<CLI::Option*> bvn_opts;
  TrialFlags trial;
  double wtp = 0.0;
  CLI::Option* wtp_opt = nullptr;
  BootstrapFlags boot;
  OutputFlags out;
};

void setup_evpi(CLI::App& app, EvpiArgs& a) {
  auto* sub = app.add_subcommand("evpi", "EVPI from INB parameters or from trial data");
  a.bvn_opts = add_bvn_flags(sub, a.bvn);
  a.trial.path_opt = sub->add_option("--trial", a.trial.path, "Trial CSV (patient_id,arm,cost,effect)");
  sub->add_option("--ref-arm", a.trial.ref_arm, "Reference arm label");
  a.wtp_opt = sub->add_option("--wtp", a.wtp, "Willingness to pay per unit effect");
  add_bootstrap_flags(sub, a.boot);
  add_output_flags(sub, a.out);
  for (CLI::Option* opt : a.bvn_opts) opt->excludes(a.trial.path_opt);
}

void run_evpi(const EvpiArgs& a, std::ostream& out) {
  OutputRecord r{"evpi"};
  double value = 0.0;
  std::optional<double> se;
  if (a.trial.path_opt->count() == 0) {
    for (CLI::Option* opt : a.bvn_opts) {
      if (opt->count() == 0) throw std::domain_error(opt->get_name() + " is required without --trial");
    }
    if (a.boot.bootstrap()) throw std::domain_error("--method bootstrap needs --trial");
    value = evpi_three(a.bvn.params());
    r.inputs = a.bvn.to_json();
  } else {
    if (a.trial.ref_arm.empty()) throw std::domain_error("--ref-arm is required with --trial");
    if (a.wtp_opt->count() == 0) throw std::domain_error("--wtp is required with --trial");
    const TrialDataset d = load_trial_csv(a.trial.path);
    r.inputs = {{"trial", a.trial.path}, {"ref_arm", a.trial.ref_arm}, {"wtp", a.wtp},
                {"method", a.boot.method}};
    if (a.boot.bootstrap()) {
      if (a.boot.seed_opt->count() == 0) throw MissingSeed();
      const McEstimate e = bootstrap_evpi(d, a.wtp, a.boot.replicates, a.boot.seed);
      value = e.mean;
      se = e.std_error;
      r.seed = a.boot.seed;
      r.inputs["boot_b"] = a.boot.replicates;
      r.inputs["seed"] = a.boot.seed;
    } else {
      const BvnParams p = estimate_inb_bvn(d, a.wtp, a.trial.ref_arm);
      value = evpi_three(p);
      r.results["params"] = {{"mu1", p.mu1()}, {"mu2", p.mu2()}, {"sd1", p.sigma1()},
                             {"sd2", p.sigma2()}, {"rho", p.rho().value()}};
    }
  }
  r.results["evpi"] = value;
  if (se) r.results["std_error"] = *se;
  if (a.out.json) {
    emit(out, r);
    return;
  }
  out << format_number(value, a.out.format());
  if (se) out << " (SE " << format_number(*se, a.out.format()) << ", seed " << *r.seed << ')';
  out << '\n';
}

// ----------------------------------------------------------------- evpi-curve

struct CurveArgs {
  TrialFlags trial;
  double wtp_min = 0.0, wtp_max = 0.0, wtp_step = 0.0;
  BootstrapFlags boot;
  std::string out_path = "-";
  std::string format = "csv";
  bool round3 = false;
};

void setup_curve(CLI::App& app, CurveArgs& a) {
  auto* sub = app.add_subcommand("evpi-curve", "EVPI over a willingness-to-pay grid");
  a.trial.path_opt = sub->add_option("--trial", a.trial.path, "Trial CSV")->required();
  sub->add_option("--ref-arm", a.trial.ref_arm, "Reference arm label")->required();
  sub->add_option("--wtp-min", a.wtp_min, "First wtp")->required();
  sub->add_option("--wtp-max", a.wtp_max, "Last wtp (inclusive)")->required();
  sub->add_option("--wtp-step", a.wtp_step, "Spacing (> 0)")->required();
  add_bootstrap_flags(sub, a.boot);
  sub->add_option("--out", a.out_path, "Destination ('-' for stdout)")->capture_default_str();
  sub->add_option("--format", a.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  sub->add_flag("--round-3", a.round3, "Three decimals in CSV output");
}

void run_curve(const CurveArgs& a, std::ostream& out) {
  if (a.boot.bootstrap() && a.boot.seed_opt->count() == 0) throw MissingSeed();
  const std::vector<double> wtps = wtp_grid(a.wtp_min, a.wtp_max, a.wtp_step);
  const TrialDataset d = load_trial_csv(a.trial.path);
  // The bootstrap ignores the reference label, but it must still name an arm.
  (void)d.arm_index(a.trial.ref_arm);
  const EvpiCurve curve =
      a.boot.bootstrap()
          ? bootstrap_evpi_curve(d, wtps, a.boot.replicates, a.boot.seed)
          : evpi_curve_closed(
                [&](double w) { return estimate_inb_bvn(d, w, a.trial.ref_arm); }, wtps);

  auto file = open_output(a.out_path);
  std::ostream& dest = file ? *file : out;
  if (a.format == "json") {
    OutputRecord r{"evpi-curve"};
    r.inputs = {{"trial", a.trial.path}, {"ref_arm", a.trial.ref_arm}, {"wtp_min", a.wtp_min},
                {"wtp_max", a.wtp_max}, {"wtp_step", a.wtp_step}, {"method", a.boot.method}};
    if (a.boot.bootstrap()) {
      r.inputs["boot_b"] = a.boot.replicates;
      r.inputs["seed"] = a.boot.seed;
      r.seed = a.boot.seed;
    }
    json points = json::array();
    for (const EvpiPoint& p : curve.points) points.push_back({{"wtp", p.wtp}, {"evpi", p.evpi}});
    r.results = {{"method", to_string(curve.method)}, {"points", points}};
    emit(dest, r);
  } else {
    write_curve_csv(dest, curve, a.round3 ? NumberFormat::fixed3 : NumberFormat::significant10);
  }
  finish(file.get(), a.out_path);
}

// ----------------------------------------------------------------- synth

struct SynthArgs {
  std::string preset;
  std::string spec_path;
  std::uint64_t seed = 0;
  CLI::Option* seed_opt = nullptr;
  std::string out_path;
  OutputFlags out;
};

void setup_synth(CLI::App& app, SynthArgs& a) {
  auto* sub = app.add_subcommand("synth", "Write a synthetic three-arm trial CSV");
  auto* preset = sub->add_option("--preset", a.preset, "Built-in preset")
                     ->check(CLI::IsMember({"copd"}));
  auto* spec = sub->add_option("--spec", a.spec_path, "JSON arm specification");
  preset->excludes(spec);
  a.seed_opt = sub->add_option("--seed", a.seed, "Seed");
  sub->add_option("--out", a.out_path, "CSV destination ('-' for stdout)")->required();
  add_output_flags(sub, a.out);
}

SynthSpec spec_from_json(const json& j) {
  SynthSpec s;
  const json& arms = j.at("arms");
  if (!arms.is_array() || arms.size() != 3) throw std::domain_error("spec needs exactly 3 arms");
  for (std::size_t k = 0; k < 3; ++k) {
    const json& a = arms[k];
    const auto n = a.at("n").get<std::int64_t>();
    if (n < 2) throw std::domain_error("arm n must be at least 2");
    s.arms[k] = {a.at("name").get<std::string>(), static_cast<std::size_t>(n),
                 a.at("mean_cost").get<double>(),  a.at("sd_cost").get<double>(),
                 a.at("mean_effect").get<double>(), a.at("sd_effect").get<double>(),
                 a.value("cost_effect_corr", 0.0)};
  }
  s.match_moments = j.value("match_moments", true);
  return s;
}

void run_synth(const SynthArgs& a, std::ostream& out) {
  if (a.preset.empty() == a.spec_path.empty()) {
    throw std::domain_error("give exactly one of --preset or --spec");
  }
  if (a.seed_opt->count() == 0) throw MissingSeed();
  SynthSpec spec;
  if (!a.preset.empty()) {
    spec = copd_preset();
  } else {
    std::ifstream in(a.spec_path);
    if (!in) throw IoError("cannot open spec file '" + a.spec_path + "'");
    try {
      spec = spec_from_json(json::parse(in));
    } catch (const json::exception& e) {
      throw std::domain_error("invalid spec '" + a.spec_path + "': " + e.what());
    }
  }
  const TrialDataset d = synth_trial(spec, a.seed);
  auto file = open_output(a.out_path);
  write_trial_csv(file ? *file : out, d);
  finish(file.get(), a.out_path);
  if (a.out_path == "-") return;
  if (a.out.json) {
    OutputRecord r{"synth"};
    r.inputs = {{"seed", a.seed}, {"out", a.out_path}};
    if (!a.preset.empty()) r.inputs["preset"] = a.preset;
    if (!a.spec_path.empty()) r.inputs["spec"] = a.spec_path;
    r.results = {{"patients", d.patient_count()}};
    r.seed = a.seed;
    emit(out, r);
  } else {
    out << "wrote " << d.patient_count() << " patients to " << a.out_path << '\n';
  }
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Closed-form unit normal loss integrals and EVPI", "unli"};
  app.require_subcommand(1);
  Unli1dArgs unli1d;
  Unli2dArgs unli2d;
  SimgridArgs simgrid;
  EvpiArgs evpi;
  CurveArgs curve;
  SynthArgs synth;
  setup_unli1d(app, unli1d);
  setup_unli2d(app, unli2d);
  setup_simgrid(app, simgrid);
  setup_evpi(app, evpi);
  setup_curve(app, curve);
  setup_synth(app, synth);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kDomainError;
  }

  try {
    const auto* sub = app.get_subcommands().front();
    const std::string name = sub->get_name();
    if (name == "unli1d") run_unli1d(unli1d, out);
    else if (name == "unli2d") run_unli2d(unli2d, out);
    else if (name == "simgrid") run_simgrid(simgrid, out);
    else if (name == "evpi") run_evpi(evpi, out);
    else if (name == "evpi-curve") run_curve(curve, out);
    else if (name == "synth") run_synth(synth, out);
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kIoError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kDomainError;
  }
  return kOk;
}

}  // namespace unli::cli
