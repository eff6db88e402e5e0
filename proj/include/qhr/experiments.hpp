#pragma once

/**
 * @file experiments.hpp
 * @brief Random sampling on Sp(1), Sp(n) and Sp(1,1), Monte Carlo
 *        genericity experiments for reversibility, and the Lie-algebra
 *        dimension audit.
 *
 * Every trial draws from its own generator, seeded by mixing the master
 * seed with the trial index, so reports do not depend on thread count.
 */

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "qhr/qspace.hpp"

namespace qhr {

using Rng = std::mt19937_64;

/// Generator for trial `index` under master `seed`.
Rng trial_rng(std::uint64_t seed, std::uint64_t index);

Quaternion sample_sp1(Rng& rng);
/// Haar-distributed element of Sp(n) (Gram–Schmidt on a Gaussian matrix).
QMatrix sample_compact(int n, Rng& rng);
/// Random word of length 8 in diagonal, unipotent and anti-diagonal generators (H1, n = 1).
QMatrix sample_sp11(Rng& rng);

enum class GroupTag { Sp1, Sp2, So4, Sp11 };
std::string_view to_string(GroupTag g);
/// Throws UnknownGroup.
GroupTag parse_group(std::string_view tag);

struct ResidualStats {
  double max = 0.0;
  double mean = 0.0;
  int count = 0;
};

struct ExperimentReport {
  GroupTag group = GroupTag::Sp1;
  int trials = 0;
  std::uint64_t seed = 0;
  int sdr_yes = 0;           // verified witnesses
  int certified_no = 0;      // reverser space of dimension 0
  int inconclusive = 0;
  double fraction_sdr = 0.0;
  double fraction_dim_zero = 0.0;
  std::map<int, int> dim_histogram;
  ResidualStats residuals;
  std::map<std::string, int> classes;  // Sp(1,1) only: verdict counts of the sampled elements
  std::string note;
};

/// Throws PreconditionViolated for non-positive trial counts.
ExperimentReport genericity_experiment(GroupTag group, int trials, std::uint64_t seed,
                                       unsigned threads = 0);

struct AuditRow {
  std::string algebra;   // "sp(n,1)" or "sp(n)"
  int n = 0;
  std::string element;   // the involution used
  LieDims computed;
  LieDims formula;
  bool match() const { return computed == formula; }
};

/// Requires 1 <= max_n <= 3.
std::vector<AuditRow> dimension_audit(int max_n);

}  // namespace qhr
