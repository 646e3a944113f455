#pragma once

#include <cstdint>
#include <string_view>

#include "rlnc_das/field.hpp"
#include "rlnc_das/group.hpp"
#include "rlnc_das/hash.hpp"

namespace rlnc_das {

/// Fiat-Shamir transcript over a running SHA-256 state.
///
/// Every absorption is framed as len(label) || label || len(data) || data.
/// A challenge finalizes a fork of the state under its label, then absorbs
/// the produced digest back, so later challenges depend on earlier ones.
/// Copying a transcript forks it.
class Transcript {
 public:
  explicit Transcript(std::string_view domain);

  void absorb(std::string_view label, ByteSpan data);
  void absorb_u64(std::string_view label, std::uint64_t v);
  void absorb_scalar(std::string_view label, const Field& f, const Scalar& s);
  void absorb_vector(std::string_view label, const ScalarVector& v);
  void absorb_element(std::string_view label, const Group& g, const GroupElement& e);

  Digest32 challenge_bytes(std::string_view label);
  /// Uniform in [1, q).
  Scalar challenge_scalar(std::string_view label, const Field& f);
  /// Uniform in F^n.
  ScalarVector challenge_vector(std::string_view label, const Field& f, std::size_t n);

 private:
  Sha256 state_;
};

}  // namespace rlnc_das
