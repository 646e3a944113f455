#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rlnc_das/bytes.hpp"
#include "rlnc_das/field.hpp"

namespace rlnc_das {

/// Encoded group element. For ristretto255 this is the canonical 32-byte
/// compressed encoding (all zeros = identity). For the transparent test
/// group it is the residue mod q, little-endian, zero-extended.
struct GroupElement {
  std::array<std::uint8_t, 32> bytes{};

  friend bool operator==(const GroupElement&, const GroupElement&) = default;
};

/// Prime-order group whose order equals the modulus of scalar_field().
///
/// Two instances:
///  - ristretto255: the cryptographic group (binding under discrete log).
///  - transparent(F): the additive group of F itself, with a*P = a*P in F.
///    Commitments become linear maps that anybody can open in any way, so it
///    is only meant for statistical experiments where adversaries are
///    scripted and binding is not under test.
class Group {
 public:
  enum class Kind : std::uint8_t { Ristretto255, Transparent };

  static Group ristretto255();
  static Group transparent(Field f);

  Kind kind() const { return kind_; }
  bool is_transparent() const { return kind_ == Kind::Transparent; }
  const Field& scalar_field() const { return field_; }
  /// Serialized element size: 32 for ristretto255, byte_width() for transparent.
  std::size_t element_bytes() const;
  std::string name() const;

  GroupElement identity() const { return {}; }
  GroupElement add(const GroupElement& a, const GroupElement& b) const;
  GroupElement sub(const GroupElement& a, const GroupElement& b) const;
  GroupElement neg(const GroupElement& a) const;
  GroupElement mul(const Scalar& k, const GroupElement& p) const;
  /// Sum of k_i * P_i.
  GroupElement msm(std::span<const Scalar> scalars, std::span<const GroupElement> points) const;

  /// Maps arbitrary bytes to an element nobody knows a discrete log of.
  /// ristretto255: SHA-512 then the standard ristretto255 hash-to-group map.
  /// transparent: a nonzero residue drawn from a SHA-512 stream.
  GroupElement hash_to_element(ByteSpan message) const;

  bool is_valid(const GroupElement& e) const;
  void encode(const GroupElement& e, ByteWriter& out) const;
  /// Throws MalformedEncoding on invalid encodings.
  GroupElement decode(ByteReader& in) const;

  friend bool operator==(const Group& a, const Group& b) {
    return a.kind_ == b.kind_ && a.field_ == b.field_;
  }

 private:
  Group(Kind kind, Field field) : kind_(kind), field_(field) {}

  Scalar to_scalar(const GroupElement& e) const;
  GroupElement from_scalar(const Scalar& s) const;

  Kind kind_;
  Field field_;
};

/// Generators g_0..g_{count-1} derived from a label. Element i is
/// hash_to_element("rlnc-das/basis" || len(label) || label || i) with
/// lengths and i as 8-byte little-endian integers, so bases are prefix-stable.
struct GeneratorBasis {
  Group group;
  std::string label;
  std::vector<GroupElement> generators;

  std::size_t size() const { return generators.size(); }
  const GroupElement& operator[](std::size_t i) const { return generators[i]; }
  GeneratorBasis prefix(std::size_t n) const;
};

GeneratorBasis derive_basis(const Group& group, std::string_view label, std::size_t count);

/// One commitment per data row.
struct RowCommitments {
  std::vector<GroupElement> rows;

  std::size_t size() const { return rows.size(); }
  friend bool operator==(const RowCommitments&, const RowCommitments&) = default;
};

/// sum_j v_j g_j. Not hiding (no blinding term).
GroupElement pedersen_commit(const GeneratorBasis& basis, const ScalarVector& v);

/// sum_j weights_j coms_j.
GroupElement combine_commitments(const Group& group, const ScalarVector& weights,
                                 const RowCommitments& coms);

}  // namespace rlnc_das
