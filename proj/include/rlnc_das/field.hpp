#pragma once

#include <array>
#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "rlnc_das/bytes.hpp"
#include "rlnc_das/error.hpp"

namespace rlnc_das {

static_assert(std::endian::native == std::endian::little,
              "scalar limbs are reinterpreted as little-endian bytes");

/// Canonical field element: integer in [0, q) stored as four little-endian
/// 64-bit limbs. The owning Field is carried by the surrounding vector or
/// matrix; a Scalar on its own is just the residue.
struct Scalar {
  std::array<std::uint64_t, 4> limbs{};

  static constexpr Scalar from_u64(std::uint64_t v) { return Scalar{{v, 0, 0, 0}}; }

  bool is_zero() const { return (limbs[0] | limbs[1] | limbs[2] | limbs[3]) == 0; }
  std::uint64_t low_u64() const { return limbs[0]; }

  friend bool operator==(const Scalar&, const Scalar&) = default;
};

/// Prime field F_q with a runtime modulus. Two backends: moduli below 2^64
/// (primality checked by deterministic Miller-Rabin) and the ristretto255
/// scalar field l = 2^252 + 27742317777372353535851937790883648493.
class Field {
 public:
  enum class Kind : std::uint8_t { Small, Ristretto255 };

  /// field_new: throws NonPrimeModulus for composite (or < 2) moduli.
  static Field make(std::uint64_t modulus);
  /// Accepts a little-endian modulus. Values above 2^64 are only accepted
  /// when they equal a whitelisted cryptographic group order.
  static Field make(ByteSpan modulus_le);
  static Field ristretto255_scalars();

  Kind kind() const { return kind_; }
  bool is_small() const { return kind_ == Kind::Small; }
  /// Valid only for small fields.
  std::uint64_t small_modulus() const { return q_; }
  /// Little-endian modulus padded to byte_width().
  Bytes modulus_bytes() const;
  /// Cardinality as a double (for analytic formulas).
  double cardinality() const;
  /// ceil(log2(q) / 8): bytes per serialized scalar.
  std::size_t byte_width() const { return byte_width_; }
  /// Bit length of q - 1: every canonical element fits in this many bits.
  unsigned element_bits() const { return element_bits_; }
  std::string name() const;

  Scalar zero() const { return Scalar{}; }
  Scalar one() const { return Scalar::from_u64(1); }
  /// Reduces v modulo q.
  Scalar from_u64(std::uint64_t v) const;
  /// Parses a canonical little-endian string of byte_width() bytes; false if >= q.
  bool try_from_bytes(ByteSpan le, Scalar& out) const;
  bool is_canonical(const Scalar& s) const;

  Scalar add(const Scalar& a, const Scalar& b) const;
  Scalar sub(const Scalar& a, const Scalar& b) const;
  Scalar neg(const Scalar& a) const;
  Scalar mul(const Scalar& a, const Scalar& b) const;
  /// Throws DomainError on zero.
  Scalar inv(const Scalar& a) const;
  Scalar pow(const Scalar& base, std::uint64_t exponent) const;

  void encode(const Scalar& s, ByteWriter& out) const;
  /// Throws MalformedEncoding on non-canonical input.
  Scalar decode(ByteReader& in) const;

  /// Uniform element of F_q.
  template <class Urbg>
  Scalar random(Urbg& rng) const;
  template <class Urbg>
  Scalar random_nonzero(Urbg& rng) const;

  friend bool operator==(const Field& a, const Field& b) {
    return a.kind_ == b.kind_ && a.q_ == b.q_;
  }

 private:
  Field(Kind kind, std::uint64_t q);

  Kind kind_;
  std::uint64_t q_;  // 0 for Ristretto255
  std::size_t byte_width_;
  unsigned element_bits_;
};

/// Deterministic Miller-Rabin, exact for all 64-bit inputs.
bool is_prime_u64(std::uint64_t n);

template <class Urbg>
Scalar Field::random(Urbg& rng) const {
  if (is_small()) {
    std::uniform_int_distribution<std::uint64_t> dist(0, q_ - 1);
    return Scalar::from_u64(dist(rng));
  }
  // Rejection sampling over element_bits()-bit integers.
  std::uniform_int_distribution<std::uint64_t> word;
  for (;;) {
    Scalar s;
    for (auto& limb : s.limbs) limb = word(rng);
    const unsigned top_bits = element_bits_ - 192;
    s.limbs[3] &= (top_bits >= 64) ? ~0ULL : ((1ULL << top_bits) - 1);
    if (is_canonical(s)) return s;
  }
}

template <class Urbg>
Scalar Field::random_nonzero(Urbg& rng) const {
  for (;;) {
    Scalar s = random(rng);
    if (!s.is_zero()) return s;
  }
}

/// Vector over one field.
struct ScalarVector {
  Field field;
  std::vector<Scalar> entries;

  ScalarVector(Field f, std::vector<Scalar> e) : field(f), entries(std::move(e)) {}
  static ScalarVector zeros(Field f, std::size_t n) { return {f, std::vector<Scalar>(n)}; }
  static ScalarVector from_u64s(Field f, std::span<const std::uint64_t> values);
  static ScalarVector unit(Field f, std::size_t n, std::size_t index);
  template <class Urbg>
  static ScalarVector random(Field f, std::size_t n, Urbg& rng) {
    std::vector<Scalar> e(n);
    for (auto& s : e) s = f.random(rng);
    return {f, std::move(e)};
  }

  std::size_t size() const { return entries.size(); }
  const Scalar& operator[](std::size_t i) const { return entries[i]; }
  Scalar& operator[](std::size_t i) { return entries[i]; }
  bool is_zero() const;

  void encode(ByteWriter& out) const;
  static ScalarVector decode(Field f, ByteReader& in);

  friend bool operator==(const ScalarVector&, const ScalarVector&) = default;
};

/// Row-major dense matrix over one field.
struct ScalarMatrix {
  Field field;
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<Scalar> data;

  ScalarMatrix(Field f, std::size_t r, std::size_t c) : field(f), rows(r), cols(c), data(r * c) {}
  static ScalarMatrix identity(Field f, std::size_t n);
  static ScalarMatrix from_u64s(Field f, std::size_t r, std::size_t c,
                                std::span<const std::uint64_t> row_major);
  template <class Urbg>
  static ScalarMatrix random(Field f, std::size_t r, std::size_t c, Urbg& rng) {
    ScalarMatrix m(f, r, c);
    for (auto& s : m.data) s = f.random(rng);
    return m;
  }

  Scalar& at(std::size_t r, std::size_t c) { return data[r * cols + c]; }
  const Scalar& at(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
  std::span<const Scalar> row(std::size_t r) const { return {data.data() + r * cols, cols}; }
  ScalarVector row_vector(std::size_t r) const;
  ScalarVector column(std::size_t c) const;
  ScalarMatrix transpose() const;

  void encode(ByteWriter& out) const;
  static ScalarMatrix decode(Field f, ByteReader& in);

  friend bool operator==(const ScalarMatrix&, const ScalarMatrix&) = default;
};

// Vector algebra. All operations check field and length agreement.
Scalar dot(const ScalarVector& a, const ScalarVector& b);
ScalarVector add(const ScalarVector& a, const ScalarVector& b);
ScalarVector sub(const ScalarVector& a, const ScalarVector& b);
ScalarVector scale(const Scalar& k, const ScalarVector& a);

/// V * c (length V.rows).
ScalarVector mat_vec_mul(const ScalarMatrix& v, const ScalarVector& c);
/// p^T * V (length V.cols).
ScalarVector vec_mat_mul(const ScalarVector& p, const ScalarMatrix& v);
ScalarMatrix mat_mul(const ScalarMatrix& a, const ScalarMatrix& b);

/// Rank by fraction-free elimination; pivot is the first nonzero entry of
/// each column in row order.
std::size_t rank(const ScalarMatrix& m);

/// Solves A X = B for square invertible A; throws SingularMatrix otherwise.
ScalarMatrix solve(const ScalarMatrix& a, const ScalarMatrix& b);

}  // namespace rlnc_das
