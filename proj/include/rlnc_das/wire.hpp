#pragma once

#include <cstdint>

#include "rlnc_das/bytes.hpp"
#include "rlnc_das/protocol.hpp"

namespace rlnc_das::wire {

/// Frame: 1-byte tag, 4-byte little-endian body length, body.
enum class MessageTag : std::uint8_t {
  Commitments = 1,
  Challenge = 2,
  Response = 3,
  Refuse = 4,
  Projections = 5,
  Proof = 6,
  Verdict = 7,
};

std::string_view to_string(MessageTag tag);

struct Frame {
  MessageTag tag;
  Bytes body;
};

inline constexpr std::size_t kFrameHeaderBytes = 5;

Bytes frame(MessageTag tag, ByteSpan body);
/// Throws MalformedEncoding on unknown tags or truncated bodies.
Frame read_frame(ByteReader& in);
Frame parse_frame(ByteSpan bytes);

// Bodies.
//  Commitments: u32 count, then count group elements.
//  Challenge:   u8 form; form 1 = seeded (u32 n, 32-byte seed), form 0 = explicit vector.
//  Response:    vector.
//  Refuse:      empty.
//  Projections: u32 count, then count vectors.
//  Proof:       u32 count, then count IPA proofs.
//  Verdict:     u8 accepted, u8 has_index, u32 index, u32 samples, u8 response_missing.
Bytes encode_commitments(const Group& group, const RowCommitments& coms);
RowCommitments decode_commitments(const Group& group, ByteSpan body);

Bytes encode_challenge(const Challenge& challenge);
Challenge decode_challenge(const Field& field, ByteSpan body);

Bytes encode_response(const ScalarVector& response);
ScalarVector decode_response(const Field& field, ByteSpan body);

Bytes encode_projections(const ProjectionSet& projections);
ProjectionSet decode_projections(const Field& field, ByteSpan body);

Bytes encode_proof(const Group& group, const MembershipProof& proof);
MembershipProof decode_proof(const Group& group, ByteSpan body);

Bytes encode_verdict(const VerifierVerdict& verdict);
VerifierVerdict decode_verdict(ByteSpan body);

}  // namespace rlnc_das::wire
