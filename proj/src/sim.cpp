#include "rlnc_das/sim.hpp"

#include <json.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <random>
#include <sstream>
#include <mutex>
#include <thread>

#include "rlnc_das/analysis.hpp"
#include "rlnc_das/error.hpp"
#include "rlnc_das/field.hpp"
#include "rlnc_das/protocol.hpp"

namespace rlnc_das::sim {
namespace {

constexpr std::uint64_t kMaxEnumeration = std::uint64_t{1} << 26;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// xoshiro256** seeded through splitmix64 from (master_seed, trial).
class TrialRng {
 public:
  using result_type = std::uint64_t;
  TrialRng(std::uint64_t master_seed, std::uint64_t trial) {
    std::uint64_t x = splitmix64(master_seed) ^ (trial * 0xd1342543de82ef95ULL);
    for (auto& w : s_) w = x = splitmix64(x);
  }
  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }
  result_type operator()() {
    const std::uint64_t out = rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return out;
  }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
  std::array<std::uint64_t, 4> s_{};
};

TrialRng trial_rng(std::uint64_t master_seed, std::uint64_t trial) { return {master_seed, trial}; }

/// Sums `trial(i)` over [0, count) on a pool of workers. Each index is
/// evaluated independently, so the sum does not depend on the split.
std::uint64_t parallel_count(std::uint64_t count, unsigned threads,
                             const std::function<bool(std::uint64_t)>& trial) {
  unsigned workers = threads ? threads : std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, std::max<std::uint64_t>(count, 1)));
  if (workers <= 1) {
    std::uint64_t hits = 0;
    for (std::uint64_t i = 0; i < count; ++i) hits += trial(i);
    return hits;
  }
  std::vector<std::uint64_t> hits(workers, 0);
  std::vector<std::thread> pool;
  std::exception_ptr failure;
  std::mutex failure_mutex;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::uint64_t i = w; i < count; i += workers) hits[w] += trial(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  std::uint64_t total = 0;
  for (auto h : hits) total += h;
  return total;
}

/// q^e, or 0 if it exceeds the enumeration limit.
std::uint64_t enumeration_size(std::uint64_t q, std::uint64_t e) {
  std::uint64_t total = 1;
  for (std::uint64_t i = 0; i < e; ++i) {
    if (total > kMaxEnumeration / q) return 0;
    total *= q;
  }
  return total;
}

/// Writes the base-q digits of `index` into `out` (least significant first).
void digits(const Field& f, std::uint64_t index, std::uint64_t q, std::span<Scalar> out) {
  for (auto& s : out) {
    s = f.from_u64(index % q);
    index /= q;
  }
}

Field small_field(const ExperimentSpec& spec) {
  require(spec.q >= 2, ErrorCode::ConfigError, "q must be >= 2");
  try {
    return Field::make(spec.q);
  } catch (const Error& e) {
    throw Error(ErrorCode::ConfigError, e.what());
  }
}

void check_common(const ExperimentSpec& spec, ExperimentKind kind) {
  require(spec.kind == kind, ErrorCode::ConfigError, "experiment kind mismatch");
  require(spec.exhaustive || spec.trials >= 1, ErrorCode::ConfigError, "trials must be >= 1");
  require(!(spec.exhaustive && spec.protocol_path), ErrorCode::ConfigError,
          "exhaustive mode enumerates the math event only");
}

ExperimentResult finish(const ExperimentSpec& spec, std::uint64_t trials, std::uint64_t successes, double analytic,
                        bool exact, std::optional<std::uint64_t> exact_successes = std::nullopt) {
  ExperimentResult r;
  r.spec = spec;
  r.trials = trials;
  r.successes = successes;
  r.analytic_value = analytic;
  r.empirical_rate = trials ? static_cast<double>(successes) / static_cast<double>(trials) : 0.0;
  r.std_error = trials ? std::sqrt(r.empirical_rate * (1.0 - r.empirical_rate) / static_cast<double>(trials)) : 0.0;
  if (exact) {
    r.within_3sigma = exact_successes ? successes == *exact_successes : r.empirical_rate == analytic;
  } else {
    // Band from the analytic rate, so a run with zero hits is still judged.
    const double sigma = std::sqrt(analytic * (1.0 - analytic) / static_cast<double>(trials));
    r.within_3sigma = std::abs(r.empirical_rate - analytic) <= 3.0 * sigma;
  }
  return r;
}

Bytes seed_bytes(TrialRng& rng) {
  Bytes b(32);
  for (std::size_t i = 0; i < b.size(); i += 8) {
    const std::uint64_t v = rng();
    for (std::size_t j = 0; j < 8; ++j) b[i + j] = static_cast<std::uint8_t>(v >> (8 * j));
  }
  return b;
}

ScalarMatrix full_rank_constraints(const Field& f, std::size_t k, std::size_t n, TrialRng& rng) {
  for (;;) {
    ScalarMatrix u = ScalarMatrix::random(f, k, n, rng);
    if (rank(u) == k) return u;
  }
}

}  // namespace

std::string_view to_string(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::Withholding: return "withholding";
    case ExperimentKind::Consistency: return "consistency";
    case ExperimentKind::MultiverifierRank: return "multiverifier_rank";
  }
  return "unknown";
}

ExperimentKind parse_kind(std::string_view name) {
  if (name == "withholding") return ExperimentKind::Withholding;
  if (name == "consistency") return ExperimentKind::Consistency;
  if (name == "multiverifier_rank" || name == "rank") return ExperimentKind::MultiverifierRank;
  fail(ErrorCode::ConfigError, "unknown experiment kind '" + std::string(name) + "'");
}

ExperimentResult run_withholding(const ExperimentSpec& spec) {
  check_common(spec, ExperimentKind::Withholding);
  const Field f = small_field(spec);
  require(spec.n >= 1, ErrorCode::ConfigError, "n must be >= 1");
  require(spec.constraints >= 1 && spec.constraints <= spec.n, ErrorCode::ConfigError,
          "constraints must be in [1, n]");
  const double analytic = std::pow(static_cast<double>(spec.q), -static_cast<double>(spec.constraints * spec.s));

  if (spec.exhaustive) {
    // Fixed constraints, every tuple of s challenges in (F^n)^s.
    auto rng = trial_rng(spec.master_seed, 0);
    const ScalarMatrix u = full_rank_constraints(f, spec.constraints, spec.n, rng);
    const std::uint64_t total = enumeration_size(spec.q, spec.n * spec.s);
    require(total != 0, ErrorCode::ConfigError, "exhaustive space too large");
    const std::uint64_t hits = parallel_count(total, spec.threads, [&](std::uint64_t idx) {
      std::vector<Scalar> c(spec.n * spec.s);
      digits(f, idx, spec.q, c);
      for (std::size_t k = 0; k < spec.s; ++k) {
        ScalarVector ck{f, {c.begin() + k * spec.n, c.begin() + (k + 1) * spec.n}};
        if (!mat_vec_mul(u, ck).is_zero()) return false;
      }
      return true;
    });
    const std::uint64_t expected = enumeration_size(spec.q, (spec.n - spec.constraints) * spec.s);
    return finish(spec, total, hits, analytic, true, expected);
  }

  if (!spec.protocol_path) {
    const std::uint64_t hits = parallel_count(spec.trials, spec.threads, [&](std::uint64_t t) {
      auto rng = trial_rng(spec.master_seed, t);
      const ScalarMatrix u = full_rank_constraints(f, spec.constraints, spec.n, rng);
      for (std::size_t k = 0; k < spec.s; ++k)
        if (!mat_vec_mul(u, ScalarVector::random(f, spec.n, rng)).is_zero()) return false;
      return true;
    });
    return finish(spec, spec.trials, hits, analytic, false);
  }

  // Full sessions: a fresh adversary and data matrix per trial; deception =
  // the verifier declares the data available after s samples.
  require(spec.m >= 1 && spec.p >= 1, ErrorCode::ConfigError, "protocol path needs m, p >= 1");
  const ProtocolParams params = ProtocolParams::make(Group::transparent(f), spec.m, spec.n, spec.p);
  const VerifierPolicy policy{1e-300, spec.s};
  const std::uint64_t hits = parallel_count(spec.trials, spec.threads, [&](std::uint64_t t) {
    auto rng = trial_rng(spec.master_seed, t);
    ScalarMatrix data = ScalarMatrix::random(f, spec.m, spec.n, rng);
    const RowCommitments coms = producer_commit(data, params);
    WithholdingClaimer adversary(std::move(data), full_rank_constraints(f, spec.constraints, spec.n, rng));
    const Bytes seed = seed_bytes(rng);
    return run_session(policy, adversary, params, coms, seed).available();
  });
  return finish(spec, spec.trials, hits, analytic, false);
}

ExperimentResult run_consistency(const ExperimentSpec& spec) {
  check_common(spec, ExperimentKind::Consistency);
  const Field f = small_field(spec);
  require(spec.m >= 1, ErrorCode::ConfigError, "m must be >= 1");
  if (spec.offset) {
    require(spec.offset->size() == spec.m, ErrorCode::ConfigError, "offset length must equal m");
    require(std::any_of(spec.offset->begin(), spec.offset->end(), [&](auto v) { return v % spec.q != 0; }),
            ErrorCode::ConfigError, "offset must be nonzero mod q");
  }
  const double analytic = std::pow(static_cast<double>(spec.q), -static_cast<double>(spec.p));
  auto offset_for = [&](TrialRng& rng) {
    if (spec.offset) return ScalarVector::from_u64s(f, *spec.offset);
    for (;;) {
      ScalarVector d = ScalarVector::random(f, spec.m, rng);
      if (!d.is_zero()) return d;
    }
  };

  if (spec.exhaustive) {
    auto rng = trial_rng(spec.master_seed, 0);
    const ScalarVector d = offset_for(rng);
    const std::uint64_t total = enumeration_size(spec.q, spec.m * spec.p);
    require(total != 0, ErrorCode::ConfigError, "exhaustive space too large");
    const std::uint64_t hits = parallel_count(total, spec.threads, [&](std::uint64_t idx) {
      std::vector<Scalar> proj(spec.m * spec.p);
      digits(f, idx, spec.q, proj);
      for (std::size_t i = 0; i < spec.p; ++i) {
        ScalarVector pi{f, {proj.begin() + i * spec.m, proj.begin() + (i + 1) * spec.m}};
        if (!dot(pi, d).is_zero()) return false;
      }
      return true;
    });
    const std::uint64_t expected = enumeration_size(spec.q, (spec.m - 1) * spec.p);
    return finish(spec, total, hits, analytic, true, expected);
  }

  if (!spec.protocol_path) {
    const std::uint64_t hits = parallel_count(spec.trials, spec.threads, [&](std::uint64_t t) {
      auto rng = trial_rng(spec.master_seed, t);
      const ScalarVector d = offset_for(rng);
      for (std::size_t i = 0; i < spec.p; ++i)
        if (!dot(ScalarVector::random(f, spec.m, rng), d).is_zero()) return false;
      return true;
    });
    return finish(spec, spec.trials, hits, analytic, false);
  }

  // Full sessions with one sample each: the inconsistent claimer passes iff
  // every projection annihilates its offset.
  require(spec.n >= 1 && spec.p >= 1, ErrorCode::ConfigError, "protocol path needs n, p >= 1");
  const ProtocolParams params = ProtocolParams::make(Group::transparent(f), spec.m, spec.n, spec.p);
  const VerifierPolicy policy{1e-300, 1};
  const std::uint64_t hits = parallel_count(spec.trials, spec.threads, [&](std::uint64_t t) {
    auto rng = trial_rng(spec.master_seed, t);
    ScalarMatrix data = ScalarMatrix::random(f, spec.m, spec.n, rng);
    const RowCommitments coms = producer_commit(data, params);
    InconsistentClaimer adversary(std::move(data), offset_for(rng));
    const Bytes seed = seed_bytes(rng);
    return run_session(policy, adversary, params, coms, seed).available();
  });
  return finish(spec, spec.trials, hits, analytic, false);
}

ExperimentResult run_multiverifier_rank(const ExperimentSpec& spec) {
  check_common(spec, ExperimentKind::MultiverifierRank);
  require(!spec.protocol_path, ErrorCode::ConfigError, "rank experiment has no protocol path");
  const Field f = small_field(spec);
  const std::size_t ls = spec.l * spec.s;
  require(spec.n >= 1 && ls >= spec.n, ErrorCode::ConfigError, "need l*s >= n >= 1");
  const auto bound = analysis::soundness_bound(static_cast<double>(spec.q), spec.n, spec.l, spec.s);

  ExperimentResult r;
  if (spec.exhaustive) {
    const std::uint64_t total = enumeration_size(spec.q, spec.n * ls);
    require(total != 0, ErrorCode::ConfigError, "exhaustive space too large");
    const std::uint64_t hits = parallel_count(total, spec.threads, [&](std::uint64_t idx) {
      ScalarMatrix c(f, spec.n, ls);
      digits(f, idx, spec.q, c.data);
      return rank(c) < spec.n;
    });
    // Full-rank count is prod_{i<n} (q^ls - q^i).
    std::uint64_t full = 1;
    const std::uint64_t qls = enumeration_size(spec.q, ls);
    for (std::size_t i = 0; i < spec.n; ++i) full *= qls - enumeration_size(spec.q, i);
    r = finish(spec, total, hits, bound.exact_rank_prob, true, total - full);
  } else {
    const std::uint64_t hits = parallel_count(spec.trials, spec.threads, [&](std::uint64_t t) {
      auto rng = trial_rng(spec.master_seed, t);
      return rank(ScalarMatrix::random(f, spec.n, ls, rng)) < spec.n;
    });
    r = finish(spec, spec.trials, hits, bound.exact_rank_prob, false);
  }
  r.analytic_bound = bound.honest_rank_term;
  return r;
}

ExperimentResult run(const ExperimentSpec& spec) {
  switch (spec.kind) {
    case ExperimentKind::Withholding: return run_withholding(spec);
    case ExperimentKind::Consistency: return run_consistency(spec);
    case ExperimentKind::MultiverifierRank: return run_multiverifier_rank(spec);
  }
  fail(ErrorCode::ConfigError, "unknown experiment kind");
}

std::string to_csv(const std::vector<ExperimentResult>& results) {
  analysis::Table t;
  t.header = {"kind", "q", "m", "n", "l", "s", "p", "trials", "empirical", "analytic", "std_error", "in_band"};
  for (const auto& r : results) {
    const auto& s = r.spec;
    t.rows.push_back({std::string(to_string(s.kind)), std::to_string(s.q), std::to_string(s.m), std::to_string(s.n),
                      std::to_string(s.l), std::to_string(s.s), std::to_string(s.p), std::to_string(r.trials),
                      analysis::format_sci(r.empirical_rate), analysis::format_sci(r.analytic_value),
                      analysis::format_sci(r.std_error), r.within_3sigma ? "true" : "false"});
  }
  return t.to_csv();
}

std::vector<ExperimentSpec> parse_specs(std::string_view json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::ConfigError, std::string("bad experiment JSON: ") + e.what());
  }
  if (!doc.is_array()) doc = nlohmann::json::array({doc});
  std::vector<ExperimentSpec> specs;
  try {
    for (const auto& j : doc) {
      require(j.is_object() && j.contains("kind"), ErrorCode::ConfigError, "experiment needs a 'kind'");
      ExperimentSpec s;
      s.kind = parse_kind(j.at("kind").get<std::string>());
      s.q = j.value("q", s.q);
      s.m = j.value("m", s.m);
      s.n = j.value("n", s.n);
      s.l = j.value("l", s.l);
      s.s = j.value("s", s.s);
      s.p = j.value("p", s.p);
      s.trials = j.value("trials", s.trials);
      s.master_seed = j.value("master_seed", s.master_seed);
      s.exhaustive = j.value("exhaustive", s.exhaustive);
      s.protocol_path = j.value("protocol_path", s.protocol_path);
      s.constraints = j.value("constraints", s.constraints);
      s.threads = j.value("threads", s.threads);
      if (j.contains("offset")) s.offset = j.at("offset").get<std::vector<std::uint64_t>>();
      specs.push_back(std::move(s));
    }
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::ConfigError, std::string("bad experiment field: ") + e.what());
  }
  return specs;
}

}  // namespace rlnc_das::sim
