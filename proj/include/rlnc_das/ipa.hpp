#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "rlnc_das/field.hpp"
#include "rlnc_das/group.hpp"
#include "rlnc_das/transcript.hpp"

namespace rlnc_das {

/// Logarithmic-size inner product argument for <a, b> = z against
/// P = <a, g> + <b, h> + z u (recursive halving, no blinding).
struct IpaProof {
  std::vector<std::pair<GroupElement, GroupElement>> rounds;  // (L_k, R_k)
  Scalar final_a;
  Scalar final_b;

  /// Wire layout: round count (1 byte), then L_1 R_1 ... L_k R_k as group
  /// encodings, then final_a and final_b as field scalars.
  void encode(const Group& group, ByteWriter& out) const;
  Bytes serialize(const Group& group) const;
  static IpaProof decode(const Group& group, ByteReader& in);

  /// Bytes of a serialized proof for vectors of power-of-two length n.
  static std::size_t encoded_size(const Group& group, std::size_t n);

  friend bool operator==(const IpaProof&, const IpaProof&) = default;
};

inline constexpr std::size_t kIpaHeaderBytes = 1;
inline constexpr std::size_t kMaxIpaRounds = 63;

bool is_power_of_two(std::size_t n);
std::size_t next_power_of_two(std::size_t n);
std::size_t log2_exact(std::size_t n);
/// Appends zero scalars up to length n.
ScalarVector zero_pad(const ScalarVector& v, std::size_t n);

/// The transcript must already hold whatever statement context the caller
/// wants bound (commitments, claimed value); the argument itself absorbs the
/// length and every (L, R) pair.
IpaProof ipa_prove(Transcript& transcript, const GeneratorBasis& g, const GeneratorBasis& h,
                   const GroupElement& u, const ScalarVector& a, const ScalarVector& b);

/// Accepts iff the folded verification equation holds for
/// P = com_a + com_b + z u. Throws MalformedProof when the round count does
/// not match log2(n).
bool ipa_verify(Transcript& transcript, const GeneratorBasis& g, const GeneratorBasis& h,
                const GroupElement& u, const GroupElement& com_a, const GroupElement& com_b,
                const Scalar& z, const IpaProof& proof);

}  // namespace rlnc_das
