#include "rlnc_das/wire.hpp"

#include <algorithm>

namespace rlnc_das::wire {

std::string_view to_string(MessageTag tag) {
  switch (tag) {
    case MessageTag::Commitments: return "commitments";
    case MessageTag::Challenge: return "challenge";
    case MessageTag::Response: return "response";
    case MessageTag::Refuse: return "refuse";
    case MessageTag::Projections: return "projections";
    case MessageTag::Proof: return "proof";
    case MessageTag::Verdict: return "verdict";
  }
  return "unknown";
}

Bytes frame(MessageTag tag, ByteSpan body) {
  ByteWriter w;
  w.put_u8(static_cast<std::uint8_t>(tag));
  w.put_u32(static_cast<std::uint32_t>(body.size()));
  w.put_bytes(body);
  return std::move(w).take();
}

Frame read_frame(ByteReader& in) {
  const std::uint8_t tag = in.get_u8();
  require(tag >= 1 && tag <= 7, ErrorCode::MalformedEncoding, "unknown message tag " + std::to_string(tag));
  const std::uint32_t len = in.get_u32();
  auto body = in.get_bytes(len);
  return {static_cast<MessageTag>(tag), Bytes(body.begin(), body.end())};
}

Frame parse_frame(ByteSpan bytes) {
  ByteReader in(bytes);
  Frame f = read_frame(in);
  in.expect_end();
  return f;
}

Bytes encode_commitments(const Group& group, const RowCommitments& coms) {
  ByteWriter w;
  w.put_u32(static_cast<std::uint32_t>(coms.size()));
  for (const auto& c : coms.rows) group.encode(c, w);
  return std::move(w).take();
}

RowCommitments decode_commitments(const Group& group, ByteSpan body) {
  ByteReader in(body);
  const std::uint32_t count = in.get_u32();
  require(in.remaining() == static_cast<std::size_t>(count) * group.element_bytes(),
          ErrorCode::MalformedEncoding, "commitment count does not match body size");
  RowCommitments coms;
  coms.rows.reserve(count);
  for (std::uint32_t i = 0; i < count; ++i) coms.rows.push_back(group.decode(in));
  return coms;
}

Bytes encode_challenge(const Challenge& challenge) {
  ByteWriter w;
  if (challenge.seed) {
    w.put_u8(1);
    w.put_u32(static_cast<std::uint32_t>(challenge.coeffs.size()));
    w.put_bytes(*challenge.seed);
  } else {
    w.put_u8(0);
    challenge.coeffs.encode(w);
  }
  return std::move(w).take();
}

Challenge decode_challenge(const Field& field, ByteSpan body) {
  ByteReader in(body);
  const std::uint8_t form = in.get_u8();
  if (form == 1) {
    const std::uint32_t n = in.get_u32();
    Seed seed;
    auto raw = in.get_bytes(seed.size());
    std::copy(raw.begin(), raw.end(), seed.begin());
    in.expect_end();
    require(n >= 1, ErrorCode::MalformedEncoding, "challenge of length 0");
    return expand_challenge(seed, field, n);
  }
  require(form == 0, ErrorCode::MalformedEncoding, "unknown challenge form");
  ScalarVector c = ScalarVector::decode(field, in);
  in.expect_end();
  return {std::move(c), std::nullopt};
}

Bytes encode_response(const ScalarVector& response) {
  ByteWriter w;
  response.encode(w);
  return std::move(w).take();
}

ScalarVector decode_response(const Field& field, ByteSpan body) {
  ByteReader in(body);
  ScalarVector v = ScalarVector::decode(field, in);
  in.expect_end();
  return v;
}

Bytes encode_projections(const ProjectionSet& projections) {
  ByteWriter w;
  w.put_u32(static_cast<std::uint32_t>(projections.size()));
  for (const auto& p : projections.vectors) p.encode(w);
  return std::move(w).take();
}

ProjectionSet decode_projections(const Field& field, ByteSpan body) {
  ByteReader in(body);
  const std::uint32_t count = in.get_u32();
  ProjectionSet set;
  for (std::uint32_t i = 0; i < count; ++i) set.vectors.push_back(ScalarVector::decode(field, in));
  in.expect_end();
  return set;
}

Bytes encode_proof(const Group& group, const MembershipProof& proof) {
  ByteWriter w;
  w.put_u32(static_cast<std::uint32_t>(proof.size()));
  for (const auto& arg : proof.arguments) arg.encode(group, w);
  return std::move(w).take();
}

MembershipProof decode_proof(const Group& group, ByteSpan body) {
  ByteReader in(body);
  const std::uint32_t count = in.get_u32();
  MembershipProof proof;
  for (std::uint32_t i = 0; i < count; ++i) proof.arguments.push_back(IpaProof::decode(group, in));
  in.expect_end();
  return proof;
}

Bytes encode_verdict(const VerifierVerdict& verdict) {
  ByteWriter w;
  w.put_u8(verdict.accepted ? 1 : 0);
  w.put_u8(verdict.failed_projection_index ? 1 : 0);
  w.put_u32(static_cast<std::uint32_t>(verdict.failed_projection_index.value_or(0)));
  w.put_u32(static_cast<std::uint32_t>(verdict.samples_so_far));
  w.put_u8(verdict.response_missing ? 1 : 0);
  return std::move(w).take();
}

VerifierVerdict decode_verdict(ByteSpan body) {
  ByteReader in(body);
  VerifierVerdict v;
  v.accepted = in.get_u8() != 0;
  const bool has_index = in.get_u8() != 0;
  const std::uint32_t index = in.get_u32();
  if (has_index) v.failed_projection_index = index;
  v.samples_so_far = in.get_u32();
  v.response_missing = in.get_u8() != 0;
  in.expect_end();
  return v;
}

}  // namespace rlnc_das::wire
