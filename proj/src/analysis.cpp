#include "rlnc_das/analysis.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <type_traits>

#include "rlnc_das/error.hpp"

namespace rlnc_das::analysis {
namespace {

void check_ratio(double v, const char* what) {
  require(v > 0.0 && v < 1.0, ErrorCode::DomainError, std::string(what) + " must lie in (0, 1)");
}

void check_q(double q) { require(q >= 2.0, ErrorCode::DomainError, "field cardinality must be >= 2"); }

std::uint64_t ceil_div(std::uint64_t a, std::uint64_t b) { return a / b + (a % b != 0); }

std::uint64_t ceil_log2(std::uint64_t n) {
  std::uint64_t bits = 0;
  while ((std::uint64_t{1} << bits) < n) ++bits;
  return bits;
}

std::uint64_t isqrt(std::uint64_t k) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(k)));
  while (r * r > k) --r;
  while ((r + 1) * (r + 1) <= k) ++r;
  return r;
}

std::string fixed1(double v, const char* unit) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.1f %s", v, unit);
  return buf;
}

std::string yes_no(bool b) { return b ? "Yes" : "No"; }

}  // namespace

double p_undetected_index(double alpha, std::uint64_t s) {
  check_ratio(alpha, "alpha");
  return std::pow(1.0 - alpha, static_cast<double>(s));
}

double p_undetected_rlnc(double q, std::uint64_t s) {
  check_q(q);
  return std::pow(q, -static_cast<double>(s));
}

double p_undetected(const FailureModel& model, std::uint64_t s) {
  return std::visit(
      [s](const auto& m) {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, IndexSampling>) return p_undetected_index(m.alpha, s);
        else return p_undetected_rlnc(m.q, s);
      },
      model);
}

std::uint64_t samples_needed(const FailureModel& model, double target) {
  check_ratio(target, "target");
  double estimate = 0;
  if (const auto* idx = std::get_if<IndexSampling>(&model)) {
    check_ratio(idx->alpha, "alpha");
    estimate = std::log(target) / std::log1p(-idx->alpha);
  } else {
    const double q = std::get<CodingSampling>(model).q;
    check_q(q);
    estimate = std::log(1.0 / target) / std::log(q);
  }
  auto s = static_cast<std::uint64_t>(std::max(0.0, std::ceil(estimate)));
  // The closed form can land one off when the ratio is close to an integer.
  while (p_undetected(model, s) > target) ++s;
  while (s > 0 && p_undetected(model, s - 1) <= target) --s;
  return s;
}

double undecodability_rlnc(double q) {
  check_q(q);
  return 1.0 - 1.0 / q;
}

SoundnessBound soundness_bound(double q, std::uint64_t n, std::uint64_t l, std::uint64_t s) {
  check_q(q);
  require(n >= 1 && l * s >= n, ErrorCode::DomainError, "need l*s >= n >= 1");
  const double ls = static_cast<double>(l * s);
  SoundnessBound b{};
  b.dishonest_term = std::pow(q, -static_cast<double>(s));
  b.honest_rank_term = std::pow(q, static_cast<double>(n) - ls);
  // 1 - prod(1 - x_i) evaluated as -expm1(sum log1p(-x_i)) to keep tiny values.
  double log_full = 0;
  for (std::uint64_t i = 0; i < n; ++i) log_full += std::log1p(-std::pow(q, static_cast<double>(i) - ls));
  b.exact_rank_prob = -std::expm1(log_full);
  b.overall = std::max(b.dishonest_term, b.exact_rank_prob);
  return b;
}

double consistency_bound(double q, std::uint64_t p) {
  check_q(q);
  require(p >= 1, ErrorCode::DomainError, "p must be >= 1");
  return std::pow(q, -static_cast<double>(p));
}

// ---------------------------------------------------------------------------

std::uint64_t next_perfect_square(std::uint64_t k) {
  std::uint64_t r = isqrt(k);
  if (r * r < k) ++r;
  return r * r;
}

std::uint64_t cmt_layer_count(std::uint64_t base_symbols, const CmtScheme& scheme) {
  const double shrink = static_cast<double>(scheme.batch) * scheme.rate;
  require(shrink > 1.0, ErrorCode::DomainError, "CMT layers do not shrink (batch * rate <= 1)");
  const double roots_info = scheme.rate * static_cast<double>(scheme.roots);
  std::uint64_t layers = 0;
  double k = static_cast<double>(base_symbols);
  while (k > roots_info) {
    k /= shrink;
    ++layers;
  }
  return layers;
}

CostReport cost_rlnc(std::uint64_t data_bytes, const RlncScheme& sc, double target) {
  require(data_bytes > 0 && sc.m >= 1 && sc.coeff_bytes >= 1 && sc.coeff_bytes <= 64 && sc.p >= 1,
          ErrorCode::DomainError, "invalid RLNC parameters");
  const std::uint64_t n = ceil_div(data_bytes, sc.m * sc.coeff_bytes);
  const double q = std::ldexp(1.0, static_cast<int>(8 * sc.coeff_bytes));
  CostReport r;
  r.scheme = "RLNC (m=" + std::to_string(sc.m) + ")";
  r.commitment_kind = "Pedersen";
  r.data_bytes = data_bytes;
  r.samples_needed = samples_needed(CodingSampling{q}, target);
  const std::uint64_t coded = sc.m * (sc.accounting == CodedVectorAccounting::FieldElements ? sc.coeff_bytes : sc.group_bytes);
  const std::uint64_t argument = 2 * ceil_log2(n) * sc.group_bytes + 2 * sc.group_bytes;
  r.per_sample_bytes = coded + sc.p * argument;
  r.sample_cost_bytes = r.samples_needed * r.per_sample_bytes;
  r.commitment_bytes = sc.m * sc.group_bytes;
  return r;
}

CostReport cost_cmt(std::uint64_t data_bytes, const CmtScheme& sc, double target) {
  check_ratio(sc.rate, "rate");
  require(data_bytes > 0 && sc.base_symbol_bytes > 0 && sc.batch >= 1 && sc.roots >= 1, ErrorCode::DomainError,
          "invalid CMT parameters");
  const std::uint64_t k = ceil_div(data_bytes, sc.base_symbol_bytes);
  const std::uint64_t layers = cmt_layer_count(k, sc);
  const double hashes = static_cast<double>(sc.hash_bytes) *
                        (static_cast<double>(sc.batch - 1) + static_cast<double>(sc.batch) * (1.0 - sc.rate));
  CostReport r;
  r.scheme = "LDPC";
  r.commitment_kind = "CMT";
  r.data_bytes = data_bytes;
  r.samples_needed = samples_needed(IndexSampling{sc.alpha}, target);
  r.per_sample_bytes = sc.base_symbol_bytes + static_cast<std::uint64_t>(std::ceil(static_cast<double>(layers) * hashes));
  r.sample_cost_bytes = r.samples_needed * r.per_sample_bytes;
  r.commitment_bytes = sc.roots * sc.hash_bytes;
  r.storage_overhead_bytes = static_cast<std::uint64_t>(std::llround(static_cast<double>(data_bytes) * (1.0 / sc.rate - 1.0)));
  r.needs_auditor = true;
  return r;
}

CostReport cost_rs_mt(std::uint64_t data_bytes, const RsMerkleScheme& sc, double target) {
  check_ratio(sc.rate, "rate");
  require(data_bytes > 0 && sc.symbol_bytes > 0, ErrorCode::DomainError, "invalid RS parameters");
  const std::uint64_t side = isqrt(next_perfect_square(ceil_div(data_bytes, sc.symbol_bytes)));
  CostReport r;
  r.scheme = "2D-RS";
  r.commitment_kind = "MT";
  r.data_bytes = data_bytes;
  r.samples_needed = samples_needed(IndexSampling{sc.alpha}, target);
  r.per_sample_bytes = sc.symbol_bytes + sc.hash_bytes * ceil_log2(2 * side);
  r.sample_cost_bytes = r.samples_needed * r.per_sample_bytes;
  r.commitment_bytes = 4 * sc.hash_bytes * side;
  r.storage_overhead_bytes = static_cast<std::uint64_t>(std::llround(static_cast<double>(data_bytes) * (1.0 / sc.rate - 1.0)));
  r.needs_auditor = true;
  return r;
}

CostReport cost_rs_kzg(std::uint64_t data_bytes, const RsKzgScheme& sc, double target) {
  check_ratio(sc.rate, "rate");
  require(data_bytes > 0 && sc.symbol_bytes > 0, ErrorCode::DomainError, "invalid RS parameters");
  const std::uint64_t side = isqrt(next_perfect_square(ceil_div(data_bytes, sc.symbol_bytes)));
  CostReport r;
  r.scheme = "2D-RS";
  r.commitment_kind = "KZG";
  r.data_bytes = data_bytes;
  r.samples_needed = samples_needed(IndexSampling{sc.alpha}, target);
  r.per_sample_bytes = sc.symbol_bytes + sc.group_bytes;
  r.sample_cost_bytes = r.samples_needed * r.per_sample_bytes;
  r.commitment_bytes = sc.group_bytes * side;
  r.storage_overhead_bytes = static_cast<std::uint64_t>(std::llround(static_cast<double>(data_bytes) * (1.0 / sc.rate - 1.0)));
  r.needs_trusted_setup = true;
  return r;
}

CostReport cost(std::uint64_t data_bytes, const SchemeParams& scheme, double target) {
  return std::visit(
      [&](const auto& sc) {
        using T = std::decay_t<decltype(sc)>;
        if constexpr (std::is_same_v<T, RlncScheme>) return cost_rlnc(data_bytes, sc, target);
        else if constexpr (std::is_same_v<T, CmtScheme>) return cost_cmt(data_bytes, sc, target);
        else if constexpr (std::is_same_v<T, RsMerkleScheme>) return cost_rs_mt(data_bytes, sc, target);
        else return cost_rs_kzg(data_bytes, sc, target);
      },
      scheme);
}

std::vector<CostReport> comparison_table(std::uint64_t data_bytes, double target) {
  return {cost_rs_mt(data_bytes, {}, target), cost_rs_kzg(data_bytes, {}, target),
          cost_cmt(data_bytes, {}, target), cost_rlnc(data_bytes, {}, target)};
}

std::string CostReport::to_json() const {
  nlohmann::ordered_json j;
  j["scheme"] = scheme;
  j["commitment"] = commitment_kind;
  j["data_bytes"] = data_bytes;
  j["samples_needed"] = samples_needed;
  j["per_sample_bytes"] = per_sample_bytes;
  j["sample_cost_bytes"] = sample_cost_bytes;
  j["commitment_bytes"] = commitment_bytes;
  j["storage_overhead_bytes"] = storage_overhead_bytes;
  j["total_download_bytes"] = total_download_bytes();
  j["needs_auditor"] = needs_auditor;
  j["needs_trusted_setup"] = needs_trusted_setup;
  j["sample_cost"] = format_kib(sample_cost_bytes);
  j["commitment_size"] = format_kib(commitment_bytes);
  j["storage_overhead"] = format_mib(storage_overhead_bytes);
  j["total_download"] = format_kib(total_download_bytes());
  return j.dump();
}

// ---------------------------------------------------------------------------

std::string format_kib(std::uint64_t bytes) { return fixed1(static_cast<double>(bytes) / 1024.0, "kB"); }

std::string format_mib(std::uint64_t bytes) {
  if (bytes == 0) return "0.0 B";
  return fixed1(static_cast<double>(bytes) / static_cast<double>(kMiB), "MB");
}

std::string format_sci(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.5e", value);
  return buf;
}

std::string Table::to_csv() const {
  std::ostringstream out;
  auto line = [&out](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out << ',';
      const bool quote = cells[i].find_first_of(",\"") != std::string::npos;
      if (!quote) {
        out << cells[i];
        continue;
      }
      out << '"';
      for (char c : cells[i]) out << (c == '"' ? "\"\"" : std::string(1, c));
      out << '"';
    }
    out << '\n';
  };
  line(header);
  for (const auto& r : rows) line(r);
  return out.str();
}

Table comparison_table_rows(const std::vector<CostReport>& reports) {
  Table t;
  t.header = {"code",          "commitment",       "sampling_cost",     "commitment_size",
              "storage_overhead", "auditor_node",  "trusted_setup",     "samples",
              "sample_cost_bytes", "commitment_bytes", "storage_overhead_bytes", "total_download"};
  for (const auto& r : reports) {
    t.rows.push_back({r.scheme, r.commitment_kind, format_kib(r.sample_cost_bytes), format_kib(r.commitment_bytes),
                      format_mib(r.storage_overhead_bytes), yes_no(r.needs_auditor), yes_no(r.needs_trusted_setup),
                      std::to_string(r.samples_needed), std::to_string(r.sample_cost_bytes),
                      std::to_string(r.commitment_bytes), std::to_string(r.storage_overhead_bytes),
                      format_kib(r.total_download_bytes())});
  }
  return t;
}

Table figure_data(Figure figure, const FigureConfig& config) {
  Table t;
  if (figure == Figure::Fig3) {
    require(config.max_samples >= 1 && !config.rlnc_field_bytes.empty(), ErrorCode::ConfigError,
            "fig3 needs max_samples >= 1 and at least one RLNC field size");
    t.header = {"s", "ldpc", "2d_rs"};
    for (unsigned w : config.rlnc_field_bytes) t.header.push_back("rlnc_" + std::to_string(w) + "B");
    for (std::uint64_t s = 1; s <= config.max_samples; ++s) {
      std::vector<std::string> row = {std::to_string(s), format_sci(p_undetected_index(config.ldpc_alpha, s)),
                                      format_sci(p_undetected_index(config.rs_alpha, s))};
      for (unsigned w : config.rlnc_field_bytes) {
        require(w >= 1 && w <= 64, ErrorCode::ConfigError, "RLNC field bytes must be in [1, 64]");
        row.push_back(format_sci(p_undetected_rlnc(std::ldexp(1.0, static_cast<int>(8 * w)), s)));
      }
      t.rows.push_back(std::move(row));
    }
    return t;
  }

  require(!config.data_mib.empty() && !config.rlnc_rows.empty(), ErrorCode::ConfigError,
          "fig4 needs data sizes and RLNC row counts");
  const bool sampling = figure == Figure::Fig4Sampling;
  t.header = {"d_mib", "2d_rs_mt", "2d_rs_kzg", "ldpc_cmt"};
  for (auto m : config.rlnc_rows) t.header.push_back("rlnc_m" + std::to_string(m));
  for (std::uint64_t mib : config.data_mib) {
    require(mib >= 1, ErrorCode::ConfigError, "data size must be >= 1 MiB");
    const std::uint64_t d = mib * kMiB;
    auto ratio = [&](const CostReport& r) {
      const auto bytes = sampling ? r.sample_cost_bytes : r.commitment_bytes;
      return format_sci(static_cast<double>(bytes) / static_cast<double>(d));
    };
    std::vector<std::string> row = {std::to_string(mib), ratio(cost_rs_mt(d, {}, config.target)),
                                    ratio(cost_rs_kzg(d, {}, config.target)), ratio(cost_cmt(d, {}, config.target))};
    for (auto m : config.rlnc_rows) {
      RlncScheme sc;
      sc.m = m;
      row.push_back(ratio(cost_rlnc(d, sc, config.target)));
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

}  // namespace rlnc_das::analysis
