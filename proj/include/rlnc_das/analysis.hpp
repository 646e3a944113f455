#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace rlnc_das::analysis {

// ---------------------------------------------------------------------------
// Failure models

/// Sampling by indexing a fixed-rate codeword: the adversary reveals the
/// largest undecodable fraction 1 - alpha and each uniform sample lands in it
/// independently.
struct IndexSampling {
  double alpha;
};

/// Sampling by coding with RLNC over a field of cardinality q: a
/// hyperplane adversary answers a 1/q fraction of challenges.
struct CodingSampling {
  double q;
};

using FailureModel = std::variant<IndexSampling, CodingSampling>;

/// (1 - alpha)^s.
double p_undetected_index(double alpha, std::uint64_t s);
/// q^{-s}.
double p_undetected_rlnc(double q, std::uint64_t s);
double p_undetected(const FailureModel& model, std::uint64_t s);

/// Minimal s with p_undetected(model, s) <= target, 0 < target < 1.
std::uint64_t samples_needed(const FailureModel& model, double target);

/// 1 - 1/q.
double undecodability_rlnc(double q);

struct SoundnessBound {
  double dishonest_term;    // q^{-s}
  double honest_rank_term;  // q^{n - ls}
  double exact_rank_prob;   // 1 - prod_{i<n} (1 - q^{i - ls})
  double overall;           // max(dishonest_term, exact_rank_prob)
};

/// l verifiers with s samples each, n data columns; requires l*s >= n >= 1.
SoundnessBound soundness_bound(double q, std::uint64_t n, std::uint64_t l, std::uint64_t s);

/// q^{-p}.
double consistency_bound(double q, std::uint64_t p);

// ---------------------------------------------------------------------------
// Cost models

/// How the RLNC coded vector is charged: m field elements (the default, used
/// for the 32 MiB comparison table) or m group elements.
enum class CodedVectorAccounting { FieldElements, GroupElements };

struct RlncScheme {
  std::uint64_t m = 16;
  std::uint64_t coeff_bytes = 8;
  std::uint64_t group_bytes = 32;
  std::uint64_t p = 4;
  CodedVectorAccounting accounting = CodedVectorAccounting::FieldElements;
};

struct CmtScheme {
  std::uint64_t base_symbol_bytes = 256;
  double rate = 0.25;
  double alpha = 0.125;
  std::uint64_t batch = 8;
  std::uint64_t roots = 256;
  std::uint64_t hash_bytes = 32;
};

struct RsMerkleScheme {
  std::uint64_t symbol_bytes = 512;
  double rate = 0.25;
  double alpha = 0.25;
  std::uint64_t hash_bytes = 32;
};

struct RsKzgScheme {
  std::uint64_t symbol_bytes = 512;
  double rate = 0.25;
  double alpha = 0.25;
  std::uint64_t group_bytes = 32;
};

using SchemeParams = std::variant<RlncScheme, CmtScheme, RsMerkleScheme, RsKzgScheme>;

struct CostReport {
  std::string scheme;
  std::string commitment_kind;
  std::uint64_t data_bytes = 0;
  std::uint64_t samples_needed = 0;
  std::uint64_t per_sample_bytes = 0;
  std::uint64_t sample_cost_bytes = 0;
  std::uint64_t commitment_bytes = 0;
  std::uint64_t storage_overhead_bytes = 0;
  bool needs_auditor = false;
  bool needs_trusted_setup = false;

  std::uint64_t total_download_bytes() const { return sample_cost_bytes + commitment_bytes; }
  /// Integer byte fields plus kB/MB display strings.
  std::string to_json() const;
};

CostReport cost_rlnc(std::uint64_t data_bytes, const RlncScheme& scheme, double target);
CostReport cost_cmt(std::uint64_t data_bytes, const CmtScheme& scheme, double target);
CostReport cost_rs_mt(std::uint64_t data_bytes, const RsMerkleScheme& scheme, double target);
CostReport cost_rs_kzg(std::uint64_t data_bytes, const RsKzgScheme& scheme, double target);
CostReport cost(std::uint64_t data_bytes, const SchemeParams& scheme, double target);

/// Layers from k base symbols down to r*t information symbols at the roots,
/// each layer shrinking by batch*rate.
std::uint64_t cmt_layer_count(std::uint64_t base_symbols, const CmtScheme& scheme);
/// Smallest perfect square >= k.
std::uint64_t next_perfect_square(std::uint64_t k);

inline constexpr std::uint64_t kMiB = 1024 * 1024;

/// The four-scheme comparison at 32 MiB with the default parameters.
std::vector<CostReport> comparison_table(std::uint64_t data_bytes = 32 * kMiB, double target = 1e-9);

// ---------------------------------------------------------------------------
// Display and figure data

/// bytes / 1024 with one decimal, e.g. "57.0 kB".
std::string format_kib(std::uint64_t bytes);
/// bytes / 1024^2 with one decimal, "0.0 B" for zero.
std::string format_mib(std::uint64_t bytes);
/// Scientific notation, six significant digits.
std::string format_sci(double value);

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::string to_csv() const;
};

enum class Figure { Fig3, Fig4Sampling, Fig4Commitment };

struct FigureConfig {
  // fig3: samples 1..max_samples.
  std::uint64_t max_samples = 100;
  double ldpc_alpha = 0.125;
  double rs_alpha = 0.25;
  std::vector<unsigned> rlnc_field_bytes = {1, 2, 3};
  // fig4: data sizes in MiB and RLNC row counts.
  std::vector<std::uint64_t> data_mib = {1, 2, 4, 8, 16, 32, 64, 128, 256, 512, 1024};
  std::vector<std::uint64_t> rlnc_rows = {16, 64, 256, 1024};
  double target = 1e-9;
};

/// Throws ConfigError on empty ranges.
Table figure_data(Figure figure, const FigureConfig& config = {});
Table comparison_table_rows(const std::vector<CostReport>& reports);

}  // namespace rlnc_das::analysis
