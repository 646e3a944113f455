#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "rlnc_das/field.hpp"
#include "rlnc_das/group.hpp"
#include "rlnc_das/ipa.hpp"
#include "rlnc_das/transcript.hpp"

namespace rlnc_das {

enum class SamplingMode : std::uint8_t {
  /// Verifier sends projections after seeing the coded vector.
  Interactive = 0,
  /// Projections come from a transcript over (commitments, c, omega); the
  /// proof travels with the response.
  FiatShamir = 1,
};

inline constexpr std::string_view kBasisLabelG = "rlnc-das/g";
inline constexpr std::string_view kBasisLabelH = "rlnc-das/h";
inline constexpr std::string_view kBasisLabelU = "rlnc-das/u";

/// Shared configuration for one data matrix V in F^{m x n}.
struct ProtocolParams {
  std::size_t m;
  std::size_t n;
  std::size_t p;
  Group group;
  SamplingMode mode;
  GeneratorBasis g;  // length padded_n()
  GeneratorBasis h;  // length padded_n()
  GroupElement u;

  static ProtocolParams make(const Group& group, std::size_t m, std::size_t n, std::size_t p,
                             SamplingMode mode = SamplingMode::Interactive);

  const Field& field() const { return group.scalar_field(); }
  /// n rounded up to a power of two (IPA length).
  std::size_t padded_n() const { return g.size(); }
};

using Seed = std::array<std::uint8_t, 32>;

/// RLNC coefficients c in F^n \ {0}. The seeded form is what travels on the
/// wire; the claimer expands it with expand_challenge.
struct Challenge {
  ScalarVector coeffs;
  std::optional<Seed> seed;
};

Challenge expand_challenge(const Seed& seed, const Field& field, std::size_t n);

struct ProjectionSet {
  std::vector<ScalarVector> vectors;  // p vectors in F^m
  std::size_t size() const { return vectors.size(); }
};

/// One inner product argument per projection, same order as the ProjectionSet.
struct MembershipProof {
  std::vector<IpaProof> arguments;
  std::size_t size() const { return arguments.size(); }
};

struct VerifierVerdict {
  bool accepted = false;
  std::optional<std::size_t> failed_projection_index;
  std::size_t samples_so_far = 0;
  bool response_missing = false;

  friend bool operator==(const VerifierVerdict&, const VerifierVerdict&) = default;
};

// ---------------------------------------------------------------------------
// Protocol steps

/// Step 1: Pedersen commitment to every row of V under basis g.
RowCommitments producer_commit(const ScalarMatrix& data, const ProtocolParams& params);

/// Step 2: c expanded from a seed derived from rng_seed.
Challenge verifier_make_challenge(ByteSpan rng_seed, const Field& field, std::size_t n);

/// Step 3 (honest): omega = V c.
ScalarVector claimer_respond(const ScalarMatrix& data, const Challenge& challenge);

/// Step 4, interactive mode: p uniform projection vectors from rng_seed.
ProjectionSet verifier_make_projections(ByteSpan rng_seed, const ProtocolParams& params);

/// Step 4, Fiat-Shamir mode: projections bound to (commitments, c, omega).
ProjectionSet derive_projections(const ProtocolParams& params, const RowCommitments& coms,
                                 const Challenge& challenge, const ScalarVector& response);

/// Step 5: for every p_i, an argument for <p_i^T V, c> against the
/// combined row commitment and [[c]]_h.
MembershipProof claimer_prove(const ProtocolParams& params, const RowCommitments& coms,
                              const ScalarMatrix& data, const Challenge& challenge,
                              const ScalarVector& response, const ProjectionSet& projections);

/// Step 6. Uses only public values; never touches V.
VerifierVerdict verifier_verify(const ProtocolParams& params, const RowCommitments& coms,
                                const Challenge& challenge, const ScalarVector& response,
                                const ProjectionSet& projections, const MembershipProof& proof);

// ---------------------------------------------------------------------------
// Claimer strategies. All are fixed before sampling starts (non-adaptive).

class Claimer {
 public:
  virtual ~Claimer() = default;
  /// std::nullopt means the claimer refuses the challenge.
  virtual std::optional<ScalarVector> respond(const Challenge& challenge) const = 0;
  virtual MembershipProof prove(const ProtocolParams& params, const RowCommitments& coms,
                                const Challenge& challenge, const ScalarVector& response,
                                const ProjectionSet& projections) const = 0;
};

class HonestClaimer : public Claimer {
 public:
  explicit HonestClaimer(ScalarMatrix data) : data_(std::move(data)) {}
  std::optional<ScalarVector> respond(const Challenge& challenge) const override;
  MembershipProof prove(const ProtocolParams& params, const RowCommitments& coms,
                        const Challenge& challenge, const ScalarVector& response,
                        const ProjectionSet& projections) const override;

 protected:
  ScalarMatrix data_;
};

/// Answers only challenges inside a fixed subspace {c : U c = 0}; with a
/// single constraint row this is the hyperplane adversary that answers
/// q^{n-1} of the q^n challenges.
class WithholdingClaimer : public HonestClaimer {
 public:
  WithholdingClaimer(ScalarMatrix data, ScalarMatrix constraints);
  static WithholdingClaimer hyperplane(ScalarMatrix data, const ScalarVector& normal);
  /// Draws `constraint_count` random nonzero constraint rows from seed.
  static WithholdingClaimer from_seed(ScalarMatrix data, ByteSpan seed, std::size_t constraint_count = 1);

  std::optional<ScalarVector> respond(const Challenge& challenge) const override;
  bool answers(const ScalarVector& coeffs) const;
  const ScalarMatrix& constraints() const { return constraints_; }

 private:
  ScalarMatrix constraints_;
};

/// Sends omega' = V c + d for a fixed offset d != 0, with arguments computed
/// honestly from V.
class InconsistentClaimer : public HonestClaimer {
 public:
  InconsistentClaimer(ScalarMatrix data, ScalarVector offset);
  static InconsistentClaimer from_seed(ScalarMatrix data, ByteSpan seed);

  std::optional<ScalarVector> respond(const Challenge& challenge) const override;
  const ScalarVector& offset() const { return offset_; }

 private:
  ScalarVector offset_;
};

// ---------------------------------------------------------------------------
// Sessions

struct VerifierPolicy {
  double target_failure = 1e-9;
  /// Upper bound on samples per session.
  std::size_t s_max = 64;
};

/// Samples the verifier draws: min(ceil(ln(1/target)/ln q), s_max).
std::size_t samples_for_policy(const VerifierPolicy& policy, const Field& field);

enum class Party : std::uint8_t { Producer, Verifier, Claimer };
std::string_view to_string(Party p);

struct SessionMessage {
  std::size_t sample;
  Party sender;
  std::uint8_t tag;
  Bytes frame;  // full framed message
};

struct SessionLog {
  std::vector<SessionMessage> messages;
  VerifierVerdict verdict;
  std::size_t samples_required = 0;

  bool available() const { return verdict.accepted; }
  /// One JSON object per message, then one for the verdict.
  std::string to_json_lines() const;
};

/// Runs steps 2-6 until samples_for_policy() successes or the first
/// refusal/failure. Every message is encoded by its sender and decoded by
/// its receiver. Deterministic in rng_seed.
SessionLog run_session(const VerifierPolicy& policy, const Claimer& claimer,
                       const ProtocolParams& params, const RowCommitments& coms, ByteSpan rng_seed);

}  // namespace rlnc_das
