// Copyright 2026 The unli Authors.
// SPDX-License-Identifier: Apache-2.0

// Patient-level data from a three-arm parallel trial: CSV ingestion,
// net-benefit summaries, bivariate normal INB estimation, bootstrap EVPI and
// synthetic data generation.

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "unli/loss_integral.hpp"
#include "unli/mc.hpp"
#include "unli/voi.hpp"

namespace unli {

/// Malformed trial input. The message names the offending line where one
/// exists.
class TrialFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A file could not be opened, read or written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Patient {
  std::string id;
  double cost;
  double effect;
};

struct Arm {
  std::string name;
  std::vector<Patient> patients;
};

/// Exactly three nonempty, distinctly named arms.
class TrialDataset {
 public:
  explicit TrialDataset(std::array<Arm, 3> arms, std::size_t dropped_rows = 0);

  const std::array<Arm, 3>& arms() const noexcept { return arms_; }
  const Arm& arm(std::string_view name) const;
  std::size_t arm_index(std::string_view name) const;
  std::size_t patient_count() const noexcept;
  /// Rows skipped during ingestion because a field was empty.
  std::size_t dropped_rows() const noexcept { return dropped_rows_; }

 private:
  std::array<Arm, 3> arms_;
  std::size_t dropped_rows_;
};

/// effect * wtp - cost.
constexpr double net_benefit(double cost, double effect, double wtp) noexcept {
  return effect * wtp - cost;
}

struct ArmSummary {
  std::string arm;
  std::size_t n;
  double mean_nb;
  double var_of_mean;  // sample variance of per-patient NB over n
};

ArmSummary summarize_arm(const Arm& arm, double wtp);

/// Reads `patient_id,arm,cost,effect` (header required, columns in any
/// order, extra columns ignored). Rows with an empty field are dropped and
/// counted; arms are kept in order of first appearance.
TrialDataset load_trial_csv(const std::filesystem::path& path);
TrialDataset parse_trial_csv(std::istream& in, std::string_view source = "<stream>");

void write_trial_csv(std::ostream& out, const TrialDataset& d);

/// The two non-reference arms, in dataset order. They are Y1 and Y2 of
/// estimate_inb_bvn.
std::array<std::string, 2> alternatives(const TrialDataset& d, std::string_view ref_arm);

/// Bivariate normal for the mean INBs of the two alternatives against
/// `ref_arm`. With independent arms the reference-arm mean is the only shared
/// term, so cov(Y1, Y2) = var_of_mean(ref).
BvnParams estimate_inb_bvn(const TrialDataset& d, double wtp, std::string_view ref_arm);

/// Bootstrap EVPI at one wtp: B replicates resampling patients with
/// replacement within each arm. Estimate is mean_b max_j NB_j - max_j mean_b
/// NB_j, floored at 0; std_error is the delete-one-replicate jackknife.
/// Replicate b draws from derive_seed(seed, b).
McEstimate bootstrap_evpi(const TrialDataset& d, double wtp, std::size_t replicates,
                          std::uint64_t seed);

/// Bootstrap EVPI at every wtp from one shared set of resamples; each point
/// equals bootstrap_evpi at that wtp.
EvpiCurve bootstrap_evpi_curve(const TrialDataset& d, std::span<const double> wtps,
                               std::size_t replicates, std::uint64_t seed);

/// Per-arm bivariate normal for (cost, effect).
struct ArmSynthSpec {
  std::string name;
  std::size_t n;
  double mean_cost;
  double sd_cost;
  double mean_effect;
  double sd_effect;
  double cost_effect_corr;
};

struct SynthSpec {
  std::array<ArmSynthSpec, 3> arms;
  /// Rescale each arm's draws so the sample mean and covariance equal the
  /// spec exactly (applied before costs are floored at 0; needs n >= 3).
  bool match_moments = true;
};

/// Costs are floored at 0 after sampling; effects are left as drawn.
TrialDataset synth_trial(const SynthSpec& spec, std::uint64_t seed);

/// Three-arm COPD trial (single 145, double 156, triple 148 patients)
/// calibrated so that, at wtp 50,000 with "single" as reference, the INBs are
/// mu = (-4734, -2668), sigma = (4678, 4645), rho = 0.5.
SynthSpec copd_preset();

}  // namespace unli
