#include "rlnc_das/protocol.hpp"

#include <json.hpp>

#include <algorithm>
#include <sstream>

#include "rlnc_das/analysis.hpp"
#include "rlnc_das/hash.hpp"
#include "rlnc_das/wire.hpp"

namespace rlnc_das {
namespace {

ByteSpan as_bytes(std::string_view s) {
  return {reinterpret_cast<const std::uint8_t*>(s.data()), s.size()};
}

/// SHA-256(framed(label) || framed(seed) || index).
Seed derive_seed(std::string_view label, ByteSpan seed, std::uint64_t index) {
  ByteWriter w;
  w.put_u64(index);
  return Sha256().update_framed(as_bytes(label)).update_framed(seed).update(w.bytes()).finish();
}

/// Statement context shared by both sides for one sample.
Transcript membership_transcript(const ProtocolParams& params, const RowCommitments& coms,
                                 const Challenge& challenge, const ScalarVector& response) {
  Transcript t("rlnc-das/membership");
  t.absorb("group", as_bytes(params.group.name()));
  t.absorb_u64("m", params.m);
  t.absorb_u64("n", params.n);
  t.absorb_u64("p", params.p);
  ByteWriter w;
  for (const auto& c : coms.rows) params.group.encode(c, w);
  t.absorb("commitments", w.bytes());
  t.absorb_vector("challenge", challenge.coeffs);
  t.absorb_vector("response", response);
  return t;
}

Transcript argument_transcript(const Transcript& base, std::size_t index, const ScalarVector& projection) {
  Transcript t = base;
  t.absorb_u64("argument-index", index);
  t.absorb_vector("projection", projection);
  return t;
}

void check_data(const ScalarMatrix& data, const ProtocolParams& params) {
  require(data.field == params.field(), ErrorCode::FieldMismatch, "data field differs from group order");
  require(data.rows == params.m && data.cols == params.n, ErrorCode::DimensionMismatch,
          "data is " + std::to_string(data.rows) + "x" + std::to_string(data.cols) + ", params expect " +
              std::to_string(params.m) + "x" + std::to_string(params.n));
}

}  // namespace

ProtocolParams ProtocolParams::make(const Group& group, std::size_t m, std::size_t n, std::size_t p,
                                    SamplingMode mode) {
  require(m >= 1 && n >= 1, ErrorCode::DimensionMismatch, "m and n must be positive");
  require(p >= 1, ErrorCode::ConfigError, "need at least one projection");
  const std::size_t padded = next_power_of_two(n);
  GeneratorBasis u = derive_basis(group, kBasisLabelU, 1);
  return ProtocolParams{m,
                        n,
                        p,
                        group,
                        mode,
                        derive_basis(group, kBasisLabelG, padded),
                        derive_basis(group, kBasisLabelH, padded),
                        u.generators.front()};
}

Challenge expand_challenge(const Seed& seed, const Field& field, std::size_t n) {
  ScalarStream stream("rlnc-das/challenge", seed);
  for (;;) {
    ScalarVector c = stream.next_vector(field, n);
    if (!c.is_zero()) return {std::move(c), seed};
  }
}

RowCommitments producer_commit(const ScalarMatrix& data, const ProtocolParams& params) {
  check_data(data, params);
  const GeneratorBasis g = params.g.prefix(params.n);
  RowCommitments coms;
  coms.rows.reserve(data.rows);
  for (std::size_t r = 0; r < data.rows; ++r) coms.rows.push_back(pedersen_commit(g, data.row_vector(r)));
  return coms;
}

Challenge verifier_make_challenge(ByteSpan rng_seed, const Field& field, std::size_t n) {
  return expand_challenge(derive_seed("rlnc-das/challenge-seed", rng_seed, 0), field, n);
}

ScalarVector claimer_respond(const ScalarMatrix& data, const Challenge& challenge) {
  return mat_vec_mul(data, challenge.coeffs);
}

ProjectionSet verifier_make_projections(ByteSpan rng_seed, const ProtocolParams& params) {
  ScalarStream stream("rlnc-das/projections", rng_seed);
  ProjectionSet set;
  for (std::size_t i = 0; i < params.p; ++i) set.vectors.push_back(stream.next_vector(params.field(), params.m));
  return set;
}

ProjectionSet derive_projections(const ProtocolParams& params, const RowCommitments& coms,
                                 const Challenge& challenge, const ScalarVector& response) {
  Transcript t = membership_transcript(params, coms, challenge, response);
  ProjectionSet set;
  for (std::size_t i = 0; i < params.p; ++i)
    set.vectors.push_back(t.challenge_vector("projection", params.field(), params.m));
  return set;
}

MembershipProof claimer_prove(const ProtocolParams& params, const RowCommitments& coms,
                              const ScalarMatrix& data, const Challenge& challenge,
                              const ScalarVector& response, const ProjectionSet& projections) {
  check_data(data, params);
  require(challenge.coeffs.size() == params.n, ErrorCode::DimensionMismatch, "challenge length");
  const std::size_t padded = params.padded_n();
  const Transcript base = membership_transcript(params, coms, challenge, response);
  const ScalarVector b = zero_pad(challenge.coeffs, padded);
  MembershipProof proof;
  proof.arguments.reserve(projections.size());
  for (std::size_t i = 0; i < projections.size(); ++i) {
    const ScalarVector& p = projections.vectors[i];
    require(p.size() == params.m, ErrorCode::DimensionMismatch, "projection length");
    const ScalarVector a = zero_pad(vec_mat_mul(p, data), padded);
    Transcript t = argument_transcript(base, i, p);
    proof.arguments.push_back(ipa_prove(t, params.g, params.h, params.u, a, b));
  }
  return proof;
}

VerifierVerdict verifier_verify(const ProtocolParams& params, const RowCommitments& coms,
                                const Challenge& challenge, const ScalarVector& response,
                                const ProjectionSet& projections, const MembershipProof& proof) {
  VerifierVerdict verdict;
  const Field& f = params.field();
  const bool shapes_ok = coms.size() == params.m && challenge.coeffs.size() == params.n &&
                         challenge.coeffs.field == f && response.size() == params.m && response.field == f &&
                         projections.size() == params.p;
  if (!shapes_ok) {
    verdict.failed_projection_index = 0;
    return verdict;
  }
  const Transcript base = membership_transcript(params, coms, challenge, response);
  const GroupElement com_c = pedersen_commit(params.h, zero_pad(challenge.coeffs, params.padded_n()));
  for (std::size_t i = 0; i < params.p; ++i) {
    const ScalarVector& p = projections.vectors[i];
    bool ok = i < proof.size() && p.size() == params.m && p.field == f;
    if (ok) {
      try {
        const GroupElement com_a = combine_commitments(params.group, p, coms);
        const Scalar z = dot(p, response);
        Transcript t = argument_transcript(base, i, p);
        ok = ipa_verify(t, params.g, params.h, params.u, com_a, com_c, z, proof.arguments[i]);
      } catch (const Error&) {
        ok = false;
      }
    }
    if (!ok) {
      verdict.failed_projection_index = i;
      return verdict;
    }
  }
  verdict.accepted = proof.size() == params.p;
  if (!verdict.accepted) verdict.failed_projection_index = params.p;
  return verdict;
}

// ---------------------------------------------------------------------------
// Claimers

std::optional<ScalarVector> HonestClaimer::respond(const Challenge& challenge) const {
  return claimer_respond(data_, challenge);
}

MembershipProof HonestClaimer::prove(const ProtocolParams& params, const RowCommitments& coms,
                                     const Challenge& challenge, const ScalarVector& response,
                                     const ProjectionSet& projections) const {
  return claimer_prove(params, coms, data_, challenge, response, projections);
}

WithholdingClaimer::WithholdingClaimer(ScalarMatrix data, ScalarMatrix constraints)
    : HonestClaimer(std::move(data)), constraints_(std::move(constraints)) {
  require(constraints_.cols == data_.cols, ErrorCode::DimensionMismatch, "constraint width must equal n");
  require(constraints_.field == data_.field, ErrorCode::FieldMismatch, "constraint field");
}

WithholdingClaimer WithholdingClaimer::hyperplane(ScalarMatrix data, const ScalarVector& normal) {
  require(!normal.is_zero(), ErrorCode::DomainError, "hyperplane normal must be nonzero");
  ScalarMatrix u(normal.field, 1, normal.size());
  std::copy(normal.entries.begin(), normal.entries.end(), u.data.begin());
  return WithholdingClaimer(std::move(data), std::move(u));
}

WithholdingClaimer WithholdingClaimer::from_seed(ScalarMatrix data, ByteSpan seed, std::size_t constraint_count) {
  require(constraint_count >= 1 && constraint_count <= data.cols, ErrorCode::ConfigError,
          "constraint count must be in [1, n]");
  ScalarStream stream("rlnc-das/withholding", seed);
  const Field f = data.field;
  for (;;) {
    ScalarMatrix u(f, constraint_count, data.cols);
    for (auto& s : u.data) s = stream.next_scalar(f);
    if (rank(u) == constraint_count) return WithholdingClaimer(std::move(data), std::move(u));
  }
}

bool WithholdingClaimer::answers(const ScalarVector& coeffs) const {
  return mat_vec_mul(constraints_, coeffs).is_zero();
}

std::optional<ScalarVector> WithholdingClaimer::respond(const Challenge& challenge) const {
  if (!answers(challenge.coeffs)) return std::nullopt;
  return claimer_respond(data_, challenge);
}

InconsistentClaimer::InconsistentClaimer(ScalarMatrix data, ScalarVector offset)
    : HonestClaimer(std::move(data)), offset_(std::move(offset)) {
  require(offset_.size() == data_.rows, ErrorCode::DimensionMismatch, "offset length must equal m");
  require(!offset_.is_zero(), ErrorCode::DomainError, "offset must be nonzero");
}

InconsistentClaimer InconsistentClaimer::from_seed(ScalarMatrix data, ByteSpan seed) {
  ScalarStream stream("rlnc-das/inconsistent", seed);
  for (;;) {
    ScalarVector d = stream.next_vector(data.field, data.rows);
    if (!d.is_zero()) return InconsistentClaimer(std::move(data), std::move(d));
  }
}

std::optional<ScalarVector> InconsistentClaimer::respond(const Challenge& challenge) const {
  return add(claimer_respond(data_, challenge), offset_);
}

// ---------------------------------------------------------------------------
// Sessions

std::size_t samples_for_policy(const VerifierPolicy& policy, const Field& field) {
  const auto needed = analysis::samples_needed(analysis::CodingSampling{field.cardinality()}, policy.target_failure);
  return static_cast<std::size_t>(std::min<std::uint64_t>(needed, policy.s_max));
}

std::string_view to_string(Party p) {
  switch (p) {
    case Party::Producer: return "producer";
    case Party::Verifier: return "verifier";
    case Party::Claimer: return "claimer";
  }
  return "unknown";
}

std::string SessionLog::to_json_lines() const {
  std::ostringstream out;
  for (const auto& msg : messages) {
    nlohmann::json j;
    j["sample"] = msg.sample;
    j["sender"] = to_string(msg.sender);
    j["type"] = wire::to_string(static_cast<wire::MessageTag>(msg.tag));
    j["bytes"] = msg.frame.size();
    j["sha256"] = to_hex(sha256(msg.frame));
    out << j.dump() << '\n';
  }
  nlohmann::json v;
  v["verdict"] = verdict.accepted ? "available" : "unavailable";
  v["samples_required"] = samples_required;
  v["samples_so_far"] = verdict.samples_so_far;
  v["response_missing"] = verdict.response_missing;
  if (verdict.failed_projection_index) v["failed_projection_index"] = *verdict.failed_projection_index;
  else v["failed_projection_index"] = nullptr;
  out << v.dump() << '\n';
  return out.str();
}

SessionLog run_session(const VerifierPolicy& policy, const Claimer& claimer, const ProtocolParams& params,
                       const RowCommitments& coms, ByteSpan rng_seed) {
  using wire::MessageTag;
  const Field& f = params.field();
  SessionLog log;
  log.samples_required = samples_for_policy(policy, f);

  auto send = [&](std::size_t sample, Party sender, MessageTag tag, const Bytes& body) {
    log.messages.push_back({sample, sender, static_cast<std::uint8_t>(tag), wire::frame(tag, body)});
    return wire::parse_frame(log.messages.back().frame);
  };

  const auto com_frame = send(0, Party::Producer, MessageTag::Commitments, wire::encode_commitments(params.group, coms));
  const RowCommitments verifier_coms = wire::decode_commitments(params.group, com_frame.body);

  VerifierVerdict verdict;
  verdict.accepted = true;
  for (std::size_t k = 0; k < log.samples_required; ++k) {
    // Step 2: seeded challenge.
    const Challenge challenge = expand_challenge(derive_seed("rlnc-das/session/challenge", rng_seed, k), f, params.n);
    const auto chal_frame = send(k, Party::Verifier, MessageTag::Challenge, wire::encode_challenge(challenge));
    const Challenge received = wire::decode_challenge(f, chal_frame.body);

    // Step 3.
    const std::optional<ScalarVector> response = claimer.respond(received);
    if (!response) {
      send(k, Party::Claimer, MessageTag::Refuse, {});
      verdict = VerifierVerdict{false, std::nullopt, k, true};
      break;
    }
    const auto resp_frame = send(k, Party::Claimer, MessageTag::Response, wire::encode_response(*response));
    const ScalarVector omega = wire::decode_response(f, resp_frame.body);

    // Steps 4-5.
    ProjectionSet projections;
    MembershipProof proof;
    if (params.mode == SamplingMode::FiatShamir) {
      const ProjectionSet claimer_side = derive_projections(params, coms, received, *response);
      const auto proof_frame = send(k, Party::Claimer, MessageTag::Proof,
                                    wire::encode_proof(params.group, claimer.prove(params, coms, received, *response, claimer_side)));
      proof = wire::decode_proof(params.group, proof_frame.body);
      projections = derive_projections(params, verifier_coms, challenge, omega);
    } else {
      projections = verifier_make_projections(derive_seed("rlnc-das/session/projections", rng_seed, k), params);
      const auto proj_frame = send(k, Party::Verifier, MessageTag::Projections, wire::encode_projections(projections));
      const ProjectionSet claimer_side = wire::decode_projections(f, proj_frame.body);
      const auto proof_frame = send(k, Party::Claimer, MessageTag::Proof,
                                    wire::encode_proof(params.group, claimer.prove(params, coms, received, *response, claimer_side)));
      proof = wire::decode_proof(params.group, proof_frame.body);
    }

    // Step 6.
    VerifierVerdict step = verifier_verify(params, verifier_coms, challenge, omega, projections, proof);
    if (!step.accepted) {
      step.samples_so_far = k;
      verdict = step;
      break;
    }
    verdict.samples_so_far = k + 1;
  }
  log.verdict = verdict;
  send(log.samples_required, Party::Verifier, MessageTag::Verdict, wire::encode_verdict(verdict));
  return log;
}

}  // namespace rlnc_das
