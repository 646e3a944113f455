#pragma once

#include <array>
#include <cstdint>
#include <sodium.h>
#include <string_view>

#include "rlnc_das/bytes.hpp"
#include "rlnc_das/field.hpp"

namespace rlnc_das {

using Digest32 = std::array<std::uint8_t, 32>;
using Digest64 = std::array<std::uint8_t, 64>;

/// Incremental SHA-256 (libsodium). Copyable, so a running state can be forked.
class Sha256 {
 public:
  Sha256();
  Sha256& update(ByteSpan data);
  Sha256& update(std::string_view text);
  /// Length-prefixed absorption (8-byte little-endian length, then data).
  Sha256& update_framed(ByteSpan data);
  Digest32 finish() const;

 private:
  crypto_hash_sha256_state state_;
};

Digest32 sha256(ByteSpan data);
Digest64 sha512(ByteSpan data);

/// Deterministic byte/scalar expander: block i is
/// SHA-512(len(domain) || domain || len(seed) || seed || i), lengths and i as
/// 8-byte little-endian integers. Scalars are drawn by rejection sampling:
/// take byte_width() bytes, mask to element_bits(), reject values >= q.
class ScalarStream {
 public:
  ScalarStream(std::string_view domain, ByteSpan seed);

  void fill(std::span<std::uint8_t> out);
  std::uint64_t next_u64();
  Scalar next_scalar(const Field& f);
  Scalar next_nonzero_scalar(const Field& f);
  ScalarVector next_vector(const Field& f, std::size_t n);

 private:
  void refill();

  Bytes prefix_;
  std::uint64_t counter_ = 0;
  Digest64 block_{};
  std::size_t used_ = sizeof(Digest64);
};

}  // namespace rlnc_das
