#include "rlnc_das/hash.hpp"

#include <algorithm>

#include "detail/sodium.hpp"

namespace rlnc_das {

std::string to_hex(ByteSpan bytes) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (auto b : bytes) {
    out.push_back(kDigits[b >> 4]);
    out.push_back(kDigits[b & 0xf]);
  }
  return out;
}

Sha256::Sha256() {
  detail::ensure_sodium();
  crypto_hash_sha256_init(&state_);
}

Sha256& Sha256::update(ByteSpan data) {
  crypto_hash_sha256_update(&state_, data.data(), data.size());
  return *this;
}

Sha256& Sha256::update(std::string_view text) {
  return update(ByteSpan(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

Sha256& Sha256::update_framed(ByteSpan data) {
  ByteWriter len;
  len.put_u64(data.size());
  update(len.bytes());
  return update(data);
}

Digest32 Sha256::finish() const {
  auto copy = state_;
  Digest32 out;
  crypto_hash_sha256_final(&copy, out.data());
  return out;
}

Digest32 sha256(ByteSpan data) { return Sha256().update(data).finish(); }

Digest64 sha512(ByteSpan data) {
  detail::ensure_sodium();
  Digest64 out;
  crypto_hash_sha512(out.data(), data.data(), data.size());
  return out;
}

ScalarStream::ScalarStream(std::string_view domain, ByteSpan seed) {
  ByteWriter w;
  w.put_u64(domain.size());
  w.put_bytes(ByteSpan(reinterpret_cast<const std::uint8_t*>(domain.data()), domain.size()));
  w.put_u64(seed.size());
  w.put_bytes(seed);
  prefix_ = std::move(w).take();
}

void ScalarStream::refill() {
  Bytes input = prefix_;
  for (int i = 0; i < 8; ++i) input.push_back(static_cast<std::uint8_t>(counter_ >> (8 * i)));
  ++counter_;
  block_ = sha512(input);
  used_ = 0;
}

void ScalarStream::fill(std::span<std::uint8_t> out) {
  std::size_t written = 0;
  while (written < out.size()) {
    if (used_ == block_.size()) refill();
    const std::size_t take = std::min(out.size() - written, block_.size() - used_);
    std::copy_n(block_.begin() + static_cast<std::ptrdiff_t>(used_), take, out.begin() + static_cast<std::ptrdiff_t>(written));
    used_ += take;
    written += take;
  }
}

std::uint64_t ScalarStream::next_u64() {
  std::array<std::uint8_t, 8> buf;
  fill(buf);
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(buf[i]) << (8 * i);
  return v;
}

Scalar ScalarStream::next_scalar(const Field& f) {
  const std::size_t width = f.byte_width();
  const unsigned spare = static_cast<unsigned>(width * 8 - f.element_bits());
  const std::uint8_t top_mask = static_cast<std::uint8_t>(0xffu >> spare);
  Bytes buf(width);
  for (;;) {
    fill(buf);
    buf.back() &= top_mask;
    Scalar s;
    if (f.try_from_bytes(buf, s)) return s;
  }
}

Scalar ScalarStream::next_nonzero_scalar(const Field& f) {
  for (;;) {
    Scalar s = next_scalar(f);
    if (!s.is_zero()) return s;
  }
}

ScalarVector ScalarStream::next_vector(const Field& f, std::size_t n) {
  auto v = ScalarVector::zeros(f, n);
  for (auto& s : v.entries) s = next_scalar(f);
  return v;
}

}  // namespace rlnc_das
