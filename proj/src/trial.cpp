// Copyright 2026 The unli Authors.
// SPDX-License-Identifier: Apache-2.0

#include "unli/trial.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Core>
#include <algorithm>
#include <charconv>
#include <cstdio>
#include <cmath>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>

#include "unli/format.hpp"
#include "unli/random.hpp"

namespace unli {

TrialDataset::TrialDataset(std::array<Arm, 3> arms, std::size_t dropped_rows)
    : arms_(std::move(arms)), dropped_rows_(dropped_rows) {
  for (std::size_t a = 0; a < arms_.size(); ++a) {
    const Arm& arm = arms_[a];
    if (arm.name.empty()) throw std::invalid_argument("arm names must be nonempty");
    if (arm.patients.empty()) throw std::invalid_argument("arm '" + arm.name + "' has no patients");
    for (std::size_t b = 0; b < a; ++b) {
      if (arms_[b].name == arm.name) throw std::invalid_argument("duplicate arm '" + arm.name + "'");
    }
    for (const Patient& p : arm.patients) {
      if (!std::isfinite(p.cost) || !std::isfinite(p.effect)) {
        throw std::invalid_argument("non-finite value for patient '" + p.id + "'");
      }
      if (p.cost < 0.0) throw std::invalid_argument("negative cost for patient '" + p.id + "'");
    }
  }
}

std::size_t TrialDataset::arm_index(std::string_view name) const {
  for (std::size_t a = 0; a < arms_.size(); ++a) {
    if (arms_[a].name == name) return a;
  }
  throw std::invalid_argument("no arm named '" + std::string(name) + "'");
}

const Arm& TrialDataset::arm(std::string_view name) const { return arms_[arm_index(name)]; }

std::size_t TrialDataset::patient_count() const noexcept {
  std::size_t n = 0;
  for (const Arm& a : arms_) n += a.patients.size();
  return n;
}

ArmSummary summarize_arm(const Arm& arm, double wtp) {
  const std::size_t n = arm.patients.size();
  if (n < 2) {
    throw std::domain_error("arm '" + arm.name + "' needs at least 2 patients for a variance");
  }
  double sum = 0.0;
  for (const Patient& p : arm.patients) sum += net_benefit(p.cost, p.effect, wtp);
  const double mean = sum / static_cast<double>(n);
  double ss = 0.0;
  for (const Patient& p : arm.patients) {
    const double e = net_benefit(p.cost, p.effect, wtp) - mean;
    ss += e * e;
  }
  const double var = ss / static_cast<double>(n - 1);
  return {arm.name, n, mean, var / static_cast<double>(n)};
}

// ---------------------------------------------------------------- CSV

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  for (;;) {
    const std::size_t comma = line.find(',');
    out.push_back(trim(line.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    line.remove_prefix(comma + 1);
  }
  return out;
}

std::string at_line(std::string_view source, std::size_t line) {
  return std::string(source) + ":" + std::to_string(line) + ": ";
}

double parse_number(std::string_view text, std::string_view column, std::string_view source,
                    std::size_t line) {
  double v = 0.0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || end != text.data() + text.size() || !std::isfinite(v)) {
    throw TrialFormatError(at_line(source, line) + std::string(column) + " '" +
                           std::string(text) + "' is not a number");
  }
  return v;
}

}  // namespace

TrialDataset parse_trial_csv(std::istream& in, std::string_view source) {
  std::string text;
  std::size_t line_no = 0;
  if (!std::getline(in, text)) throw TrialFormatError(std::string(source) + ": empty input");
  ++line_no;
  if (text.starts_with("\xEF\xBB\xBF")) text.erase(0, 3);

  constexpr std::array<std::string_view, 4> kColumns = {"patient_id", "arm", "cost", "effect"};
  std::array<std::size_t, 4> col{};
  const std::vector<std::string_view> header = split(text);
  for (std::size_t c = 0; c < kColumns.size(); ++c) {
    const auto it = std::find(header.begin(), header.end(), kColumns[c]);
    if (it == header.end()) {
      throw TrialFormatError(at_line(source, 1) + "missing column '" + std::string(kColumns[c]) +
                             "'");
    }
    col[c] = static_cast<std::size_t>(it - header.begin());
  }
  const std::size_t needed = *std::max_element(col.begin(), col.end()) + 1;

  std::vector<Arm> arms;
  std::size_t dropped = 0;
  while (std::getline(in, text)) {
    ++line_no;
    if (trim(text).empty()) continue;
    const std::vector<std::string_view> fields = split(text);
    if (fields.size() < needed) {
      throw TrialFormatError(at_line(source, line_no) + "expected " +
                             std::to_string(header.size()) + " fields, found " +
                             std::to_string(fields.size()));
    }
    const std::string_view id = fields[col[0]];
    const std::string_view arm = fields[col[1]];
    const std::string_view cost = fields[col[2]];
    const std::string_view effect = fields[col[3]];
    if (id.empty() || arm.empty() || cost.empty() || effect.empty()) {
      ++dropped;
      continue;
    }
    Patient p{std::string(id), parse_number(cost, "cost", source, line_no),
              parse_number(effect, "effect", source, line_no)};
    if (p.cost < 0.0) {
      throw TrialFormatError(at_line(source, line_no) + "cost must be nonnegative");
    }
    auto it = std::find_if(arms.begin(), arms.end(), [&](const Arm& a) { return a.name == arm; });
    if (it == arms.end()) {
      if (arms.size() == 3) {
        throw TrialFormatError(at_line(source, line_no) + "unexpected fourth arm '" +
                               std::string(arm) + "' (already have '" + arms[0].name + "', '" +
                               arms[1].name + "', '" + arms[2].name + "')");
      }
      arms.push_back({std::string(arm), {}});
      it = arms.end() - 1;
    }
    it->patients.push_back(std::move(p));
  }
  if (in.bad()) throw IoError(std::string(source) + ": read error");
  if (arms.size() != 3) {
    throw TrialFormatError(std::string(source) + ": expected exactly 3 arms, found " +
                           std::to_string(arms.size()));
  }
  return TrialDataset({std::move(arms[0]), std::move(arms[1]), std::move(arms[2])}, dropped);
}

TrialDataset load_trial_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open trial file '" + path.string() + "'");
  return parse_trial_csv(in, path.string());
}

void write_trial_csv(std::ostream& out, const TrialDataset& d) {
  char buf[64];
  out << "patient_id,arm,cost,effect\n";
  for (const Arm& arm : d.arms()) {
    for (const Patient& p : arm.patients) {
      // Round-trip precision.
      out << p.id << ',' << arm.name << ',';
      std::snprintf(buf, sizeof buf, "%.17g,", p.cost);
      out << buf;
      std::snprintf(buf, sizeof buf, "%.17g\n", p.effect);
      out << buf;
    }
  }
}

// ---------------------------------------------------------------- INB model

std::array<std::string, 2> alternatives(const TrialDataset& d, std::string_view ref_arm) {
  const std::size_t r = d.arm_index(ref_arm);
  std::array<std::string, 2> out;
  std::size_t k = 0;
  for (std::size_t a = 0; a < 3; ++a) {
    if (a != r) out[k++] = d.arms()[a].name;
  }
  return out;
}

BvnParams estimate_inb_bvn(const TrialDataset& d, double wtp, std::string_view ref_arm) {
  const auto [first, second] = alternatives(d, ref_arm);
  const ArmSummary ref = summarize_arm(d.arm(ref_arm), wtp);
  const ArmSummary a = summarize_arm(d.arm(first), wtp);
  const ArmSummary b = summarize_arm(d.arm(second), wtp);
  const double sigma1 = std::sqrt(a.var_of_mean + ref.var_of_mean);
  const double sigma2 = std::sqrt(b.var_of_mean + ref.var_of_mean);
  if (!(sigma1 > 0.0) || !(sigma2 > 0.0)) {
    throw std::domain_error("incremental net benefit has zero variance");
  }
  return {a.mean_nb - ref.mean_nb, b.mean_nb - ref.mean_nb, sigma1, sigma2,
          ref.var_of_mean / (sigma1 * sigma2)};
}

// ---------------------------------------------------------------- bootstrap

namespace {

// Arm means of cost and effect for every replicate; NB means at any wtp
// follow linearly.
struct Resamples {
  std::size_t replicates;
  std::vector<std::array<double, 3>> mean_cost;
  std::vector<std::array<double, 3>> mean_effect;
};

Resamples resample(const TrialDataset& d, std::size_t replicates, std::uint64_t seed) {
  if (replicates < 2) throw std::invalid_argument("bootstrap needs at least 2 replicates");
  Resamples r{replicates, std::vector<std::array<double, 3>>(replicates),
              std::vector<std::array<double, 3>>(replicates)};
  for (std::size_t b = 0; b < replicates; ++b) {
    const CounterStream stream(derive_seed(seed, b));
    std::uint64_t counter = 0;
    for (std::size_t a = 0; a < 3; ++a) {
      const std::vector<Patient>& pts = d.arms()[a].patients;
      double cost = 0.0;
      double effect = 0.0;
      for (std::size_t k = 0; k < pts.size(); ++k) {
        const Patient& p = pts[stream.below(counter++, pts.size())];
        cost += p.cost;
        effect += p.effect;
      }
      r.mean_cost[b][a] = cost / static_cast<double>(pts.size());
      r.mean_effect[b][a] = effect / static_cast<double>(pts.size());
    }
  }
  return r;
}

McEstimate evpi_from_resamples(const Resamples& r, double wtp, std::uint64_t seed) {
  const std::size_t n = r.replicates;
  std::vector<std::array<double, 3>> nb(n);
  std::vector<double> best(n);
  std::array<double, 3> sum{};
  double sum_best = 0.0;
  for (std::size_t b = 0; b < n; ++b) {
    for (std::size_t a = 0; a < 3; ++a) {
      nb[b][a] = net_benefit(r.mean_cost[b][a], r.mean_effect[b][a], wtp);
      sum[a] += nb[b][a];
    }
    best[b] = std::max({nb[b][0], nb[b][1], nb[b][2]});
    sum_best += best[b];
  }
  const double dn = static_cast<double>(n);
  const double estimate = sum_best / dn - std::max({sum[0], sum[1], sum[2]}) / dn;

  // Delete-one-replicate jackknife.
  std::vector<double> loo(n);
  double loo_mean = 0.0;
  for (std::size_t b = 0; b < n; ++b) {
    double best_of_means = -INFINITY;
    for (std::size_t a = 0; a < 3; ++a) best_of_means = std::max(best_of_means, sum[a] - nb[b][a]);
    loo[b] = (sum_best - best[b] - best_of_means) / (dn - 1.0);
    loo_mean += loo[b];
  }
  loo_mean /= dn;
  double ss = 0.0;
  for (double v : loo) ss += (v - loo_mean) * (v - loo_mean);
  const double se = std::sqrt((dn - 1.0) / dn * ss);
  return {std::max(estimate, 0.0), se, n, seed};
}

}  // namespace

McEstimate bootstrap_evpi(const TrialDataset& d, double wtp, std::size_t replicates,
                          std::uint64_t seed) {
  if (!std::isfinite(wtp)) throw std::domain_error("wtp must be finite");
  return evpi_from_resamples(resample(d, replicates, seed), wtp, seed);
}

EvpiCurve bootstrap_evpi_curve(const TrialDataset& d, std::span<const double> wtps,
                               std::size_t replicates, std::uint64_t seed) {
  detail::require_increasing(wtps);
  const Resamples r = resample(d, replicates, seed);
  EvpiCurve curve{{}, EvpiMethod::bootstrap};
  curve.points.reserve(wtps.size());
  for (double w : wtps) curve.points.push_back({w, evpi_from_resamples(r, w, seed).mean});
  return curve;
}

// ---------------------------------------------------------------- synthesis

namespace {

void validate(const ArmSynthSpec& a) {
  const std::string where = "arm '" + a.name + "': ";
  if (a.name.empty()) throw std::domain_error("synthetic arm needs a name");
  if (a.n < 2) throw std::domain_error(where + "n must be at least 2");
  if (!std::isfinite(a.mean_cost) || !std::isfinite(a.mean_effect)) {
    throw std::domain_error(where + "means must be finite");
  }
  if (!(a.sd_cost > 0.0) || !(a.sd_effect > 0.0) || !std::isfinite(a.sd_cost) ||
      !std::isfinite(a.sd_effect)) {
    throw std::domain_error(where + "standard deviations must be positive and finite");
  }
  if (!(std::abs(a.cost_effect_corr) < 1.0)) {
    throw std::domain_error(where + "cost-effect correlation must lie in (-1, 1)");
  }
}

Arm synth_arm(const ArmSynthSpec& spec, bool match_moments, std::uint64_t key,
              std::size_t& next_id) {
  using Eigen::Index;
  const CounterStream stream(key);
  const Index n = static_cast<Index>(spec.n);
  Eigen::MatrixX2d z(n, 2);
  for (Index k = 0; k < n; ++k) {
    z(k, 0) = stream.normal(2 * static_cast<std::uint64_t>(k));
    z(k, 1) = stream.normal(2 * static_cast<std::uint64_t>(k) + 1);
  }
  if (match_moments && n >= 3) {
    z.rowwise() -= z.colwise().mean();
    const Eigen::Matrix2d sample = (z.transpose() * z) / static_cast<double>(n - 1);
    const Eigen::LLT<Eigen::Matrix2d> llt(sample);
    if (llt.info() == Eigen::Success) {
      // Whiten: rows of z L^{-T} have identity sample covariance.
      z = llt.matrixU().solve<Eigen::OnTheRight>(z);
    }
  }
  Eigen::Matrix2d target;
  const double cov = spec.cost_effect_corr * spec.sd_cost * spec.sd_effect;
  target << spec.sd_cost * spec.sd_cost, cov, cov, spec.sd_effect * spec.sd_effect;
  const Eigen::Matrix2d lower = target.llt().matrixL();
  const Eigen::MatrixX2d x =
      (z * lower.transpose()).rowwise() + Eigen::RowVector2d(spec.mean_cost, spec.mean_effect);

  Arm arm{spec.name, {}};
  arm.patients.reserve(spec.n);
  for (Index k = 0; k < n; ++k) {
    arm.patients.push_back({std::to_string(next_id++), std::max(x(k, 0), 0.0), x(k, 1)});
  }
  return arm;
}

}  // namespace

TrialDataset synth_trial(const SynthSpec& spec, std::uint64_t seed) {
  for (const ArmSynthSpec& a : spec.arms) validate(a);
  std::size_t next_id = 1;
  std::array<Arm, 3> arms;
  for (std::size_t a = 0; a < 3; ++a) {
    arms[a] = synth_arm(spec.arms[a], spec.match_moments, derive_seed(seed, a), next_id);
  }
  return TrialDataset(std::move(arms));
}

SynthSpec copd_preset() {
  constexpr double wtp = 50'000.0;
  constexpr double mu1 = -4734.0;
  constexpr double mu2 = -2668.0;
  constexpr double sigma1 = 4678.0;
  constexpr double sigma2 = 4645.0;
  constexpr double rho = 0.5;
  constexpr double corr = 0.1;

  // Effect SD giving per-patient NB variance `var_nb` at the calibration wtp.
  const auto sd_effect = [&](double sd_cost, double var_nb) {
    return (corr * sd_cost + std::sqrt(corr * corr * sd_cost * sd_cost - sd_cost * sd_cost + var_nb)) /
           wtp;
  };
  const auto cost_for = [&](double effect, double nb) { return effect * wtp - nb; };

  const double shared = rho * sigma1 * sigma2;  // var_of_mean of the reference arm
  const std::size_t n_single = 145;
  const std::size_t n_double = 156;
  const std::size_t n_triple = 148;
  const double nb_single = net_benefit(2678.0, 0.7092, wtp);

  SynthSpec s;
  s.arms[0] = {"single", n_single, 2678.0, 1000.0, 0.7092,
               sd_effect(1000.0, static_cast<double>(n_single) * shared), corr};
  s.arms[1] = {"double", n_double, cost_for(0.7100, nb_single + mu1), 1200.0, 0.7100,
               sd_effect(1200.0, static_cast<double>(n_double) * (sigma1 * sigma1 - shared)),
               corr};
  s.arms[2] = {"triple", n_triple, cost_for(0.7217, nb_single + mu2), 1200.0, 0.7217,
               sd_effect(1200.0, static_cast<double>(n_triple) * (sigma2 * sigma2 - shared)),
               corr};
  s.match_moments = true;
  return s;
}

}  // namespace unli
