#include "rlnc_das/group.hpp"

#include <sodium.h>

#include <cstring>

#include "detail/sodium.hpp"
#include "rlnc_das/hash.hpp"

namespace rlnc_das {
namespace {

GroupElement point_op(int (*op)(unsigned char*, const unsigned char*, const unsigned char*),
                      const GroupElement& a, const GroupElement& b) {
  GroupElement r;
  require(op(r.bytes.data(), a.bytes.data(), b.bytes.data()) == 0, ErrorCode::MalformedEncoding,
          "invalid ristretto255 encoding");
  return r;
}

}  // namespace

Group Group::ristretto255() {
  detail::ensure_sodium();
  return Group(Kind::Ristretto255, Field::ristretto255_scalars());
}

Group Group::transparent(Field f) { return Group(Kind::Transparent, f); }

std::size_t Group::element_bytes() const {
  return kind_ == Kind::Ristretto255 ? crypto_core_ristretto255_BYTES : field_.byte_width();
}

std::string Group::name() const {
  return kind_ == Kind::Ristretto255 ? "ristretto255" : "transparent-" + field_.name();
}

Scalar Group::to_scalar(const GroupElement& e) const {
  Scalar s;
  std::memcpy(s.limbs.data(), e.bytes.data(), 32);
  return s;
}

GroupElement Group::from_scalar(const Scalar& s) const {
  GroupElement e;
  std::memcpy(e.bytes.data(), s.limbs.data(), 32);
  return e;
}

GroupElement Group::add(const GroupElement& a, const GroupElement& b) const {
  if (is_transparent()) return from_scalar(field_.add(to_scalar(a), to_scalar(b)));
  if (a == identity()) return b;
  if (b == identity()) return a;
  return point_op(crypto_core_ristretto255_add, a, b);
}

GroupElement Group::sub(const GroupElement& a, const GroupElement& b) const {
  if (is_transparent()) return from_scalar(field_.sub(to_scalar(a), to_scalar(b)));
  return point_op(crypto_core_ristretto255_sub, a, b);
}

GroupElement Group::neg(const GroupElement& a) const { return sub(identity(), a); }

GroupElement Group::mul(const Scalar& k, const GroupElement& p) const {
  if (is_transparent()) return from_scalar(field_.mul(k, to_scalar(p)));
  if (k.is_zero() || p == identity()) return identity();
  GroupElement r;
  // libsodium reports an identity result as -1; only a bad encoding is an error here.
  if (crypto_scalarmult_ristretto255(r.bytes.data(), reinterpret_cast<const unsigned char*>(k.limbs.data()),
                                     p.bytes.data()) != 0) {
    require(crypto_core_ristretto255_is_valid_point(p.bytes.data()) == 1, ErrorCode::MalformedEncoding,
            "invalid ristretto255 encoding");
    return identity();
  }
  return r;
}

GroupElement Group::msm(std::span<const Scalar> scalars, std::span<const GroupElement> points) const {
  require(scalars.size() == points.size(), ErrorCode::DimensionMismatch,
          "msm: " + std::to_string(scalars.size()) + " scalars vs " + std::to_string(points.size()) +
              " points");
  if (is_transparent()) {
    Scalar acc;
    for (std::size_t i = 0; i < scalars.size(); ++i)
      acc = field_.add(acc, field_.mul(scalars[i], to_scalar(points[i])));
    return from_scalar(acc);
  }
  GroupElement acc = identity();
  for (std::size_t i = 0; i < scalars.size(); ++i) {
    if (scalars[i].is_zero()) continue;
    acc = add(acc, mul(scalars[i], points[i]));
  }
  return acc;
}

GroupElement Group::hash_to_element(ByteSpan message) const {
  if (is_transparent()) {
    ScalarStream stream("rlnc-das/transparent-hash-to-group", message);
    return from_scalar(stream.next_nonzero_scalar(field_));
  }
  const Digest64 h = sha512(message);
  GroupElement e;
  crypto_core_ristretto255_from_hash(e.bytes.data(), h.data());
  return e;
}

bool Group::is_valid(const GroupElement& e) const {
  if (is_transparent()) {
    for (std::size_t i = field_.byte_width(); i < 32; ++i)
      if (e.bytes[i] != 0) return false;
    return field_.is_canonical(to_scalar(e));
  }
  // libsodium 1.0.18 accepts bit 255 set; canonical encodings never have it.
  if (e.bytes[31] & 0x80) return false;
  return e == identity() || crypto_core_ristretto255_is_valid_point(e.bytes.data()) == 1;
}

void Group::encode(const GroupElement& e, ByteWriter& out) const {
  out.put_bytes(ByteSpan(e.bytes.data(), element_bytes()));
}

GroupElement Group::decode(ByteReader& in) const {
  GroupElement e;
  auto raw = in.get_bytes(element_bytes());
  std::memcpy(e.bytes.data(), raw.data(), raw.size());
  require(is_valid(e), ErrorCode::MalformedEncoding, "invalid " + name() + " element");
  return e;
}

GeneratorBasis GeneratorBasis::prefix(std::size_t n) const {
  require(n <= generators.size(), ErrorCode::DimensionMismatch, "basis prefix longer than basis");
  return {group, label, std::vector<GroupElement>(generators.begin(), generators.begin() + static_cast<std::ptrdiff_t>(n))};
}

GeneratorBasis derive_basis(const Group& group, std::string_view label, std::size_t count) {
  GeneratorBasis basis{group, std::string(label), {}};
  basis.generators.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    ByteWriter msg;
    constexpr std::string_view kTag = "rlnc-das/basis";
    msg.put_bytes(ByteSpan(reinterpret_cast<const std::uint8_t*>(kTag.data()), kTag.size()));
    msg.put_u64(label.size());
    msg.put_bytes(ByteSpan(reinterpret_cast<const std::uint8_t*>(label.data()), label.size()));
    msg.put_u64(i);
    basis.generators.push_back(group.hash_to_element(msg.bytes()));
  }
  return basis;
}

GroupElement pedersen_commit(const GeneratorBasis& basis, const ScalarVector& v) {
  require(basis.group.scalar_field() == v.field, ErrorCode::FieldMismatch,
          "vector field differs from group order");
  require(basis.size() == v.size(), ErrorCode::DimensionMismatch,
          "basis length " + std::to_string(basis.size()) + " vs vector length " +
              std::to_string(v.size()));
  return basis.group.msm(v.entries, basis.generators);
}

GroupElement combine_commitments(const Group& group, const ScalarVector& weights,
                                 const RowCommitments& coms) {
  require(group.scalar_field() == weights.field, ErrorCode::FieldMismatch,
          "weight field differs from group order");
  require(weights.size() == coms.size(), ErrorCode::DimensionMismatch,
          std::to_string(weights.size()) + " weights for " + std::to_string(coms.size()) +
              " commitments");
  return group.msm(weights.entries, coms.rows);
}

}  // namespace rlnc_das
