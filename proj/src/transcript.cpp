#include "rlnc_das/transcript.hpp"

namespace rlnc_das {
namespace {

ByteSpan as_bytes(std::string_view s) {
  return {reinterpret_cast<const std::uint8_t*>(s.data()), s.size()};
}

}  // namespace

Transcript::Transcript(std::string_view domain) {
  state_.update_framed(as_bytes("rlnc-das/transcript/v1"));
  state_.update_framed(as_bytes(domain));
}

void Transcript::absorb(std::string_view label, ByteSpan data) {
  state_.update_framed(as_bytes(label));
  state_.update_framed(data);
}

void Transcript::absorb_u64(std::string_view label, std::uint64_t v) {
  ByteWriter w;
  w.put_u64(v);
  absorb(label, w.bytes());
}

void Transcript::absorb_scalar(std::string_view label, const Field& f, const Scalar& s) {
  ByteWriter w;
  f.encode(s, w);
  absorb(label, w.bytes());
}

void Transcript::absorb_vector(std::string_view label, const ScalarVector& v) {
  ByteWriter w;
  v.encode(w);
  absorb(label, w.bytes());
}

void Transcript::absorb_element(std::string_view label, const Group& g, const GroupElement& e) {
  ByteWriter w;
  g.encode(e, w);
  absorb(label, w.bytes());
}

Digest32 Transcript::challenge_bytes(std::string_view label) {
  Sha256 fork = state_;
  fork.update_framed(as_bytes("challenge"));
  fork.update_framed(as_bytes(label));
  const Digest32 out = fork.finish();
  absorb("challenge-output", out);
  return out;
}

Scalar Transcript::challenge_scalar(std::string_view label, const Field& f) {
  const Digest32 seed = challenge_bytes(label);
  ScalarStream stream("rlnc-das/transcript-scalar", seed);
  return stream.next_nonzero_scalar(f);
}

ScalarVector Transcript::challenge_vector(std::string_view label, const Field& f, std::size_t n) {
  const Digest32 seed = challenge_bytes(label);
  ScalarStream stream("rlnc-das/transcript-vector", seed);
  return stream.next_vector(f, n);
}

}  // namespace rlnc_das
