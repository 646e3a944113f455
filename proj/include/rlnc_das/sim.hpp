#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace rlnc_das::sim {

enum class ExperimentKind { Withholding, Consistency, MultiverifierRank };

std::string_view to_string(ExperimentKind kind);
ExperimentKind parse_kind(std::string_view name);  // ConfigError on unknown names

struct ExperimentSpec {
  ExperimentKind kind = ExperimentKind::Withholding;
  std::uint64_t q = 17;  // prime < 2^64
  std::size_t m = 1;
  std::size_t n = 1;
  std::size_t l = 1;
  std::size_t s = 1;
  std::size_t p = 1;
  std::uint64_t trials = 1;
  std::uint64_t master_seed = 0;
  /// Enumerate every outcome instead of sampling; trials is ignored.
  bool exhaustive = false;
  /// Run full protocol sessions over the transparent group Z_q instead of
  /// the bare linear-algebra event. Withholding and consistency only.
  bool protocol_path = false;
  /// Withholding: number of independent constraints (1 = hyperplane).
  std::size_t constraints = 1;
  /// Consistency: fixed offset d (length m); drawn per trial when unset.
  std::optional<std::vector<std::uint64_t>> offset;
  /// 0 = hardware concurrency. Never changes the result.
  unsigned threads = 0;
};

struct ExperimentResult {
  ExperimentSpec spec;
  double empirical_rate = 0;
  double analytic_value = 0;
  /// Looser bound where one exists (q^{n-ls} for the rank experiment).
  std::optional<double> analytic_bound;
  std::uint64_t trials = 0;
  std::uint64_t successes = 0;
  double std_error = 0;  // sqrt(p(1-p)/N) at the empirical rate
  bool within_3sigma = false;
};

/// Success = all s challenges satisfy U c = 0. Analytic q^{-constraints*s}.
ExperimentResult run_withholding(const ExperimentSpec& spec);
/// Success = every projection annihilates d. Analytic q^{-p}.
ExperimentResult run_consistency(const ExperimentSpec& spec);
/// Success = a uniform n x ls matrix has rank < n.
ExperimentResult run_multiverifier_rank(const ExperimentSpec& spec);
ExperimentResult run(const ExperimentSpec& spec);

/// Columns: kind,q,m,n,l,s,p,trials,empirical,analytic,std_error,in_band.
std::string to_csv(const std::vector<ExperimentResult>& results);

/// A JSON object or array of objects with the ExperimentSpec field names.
std::vector<ExperimentSpec> parse_specs(std::string_view json_text);

}  // namespace rlnc_das::sim
