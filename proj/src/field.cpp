#include "rlnc_das/field.hpp"

#include <sodium.h>

#include <algorithm>
#include <cmath>
#include <cstring>

#include "detail/sodium.hpp"

namespace rlnc_das {
namespace {

// Order of the ristretto255 group, little-endian limbs.
constexpr std::array<std::uint64_t, 4> kRistrettoOrder = {
    0x5812631a5cf5d3edULL, 0x14def9dea2f79cd6ULL, 0x0ULL, 0x1000000000000000ULL};

unsigned bit_length(std::uint64_t v) { return v == 0 ? 0 : 64u - static_cast<unsigned>(std::countl_zero(v)); }

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t result = 1 % m;
  base %= m;
  while (exp > 0) {
    if (exp & 1) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return result;
}

unsigned char* raw(Scalar& s) { return reinterpret_cast<unsigned char*>(s.limbs.data()); }
const unsigned char* raw(const Scalar& s) {
  return reinterpret_cast<const unsigned char*>(s.limbs.data());
}

bool less_than(const std::array<std::uint64_t, 4>& a, const std::array<std::uint64_t, 4>& b) {
  for (int i = 3; i >= 0; --i) {
    if (a[i] != b[i]) return a[i] < b[i];
  }
  return false;
}

void check_same(const Field& a, const Field& b) {
  require(a == b, ErrorCode::FieldMismatch, a.name() + " vs " + b.name());
}

}  // namespace

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int r = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++r;
  }
  // These bases are sufficient for every n < 2^64.
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < r; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

Field::Field(Kind kind, std::uint64_t q) : kind_(kind), q_(q) {
  if (kind == Kind::Small) {
    element_bits_ = std::max(1u, bit_length(q - 1));
  } else {
    element_bits_ = 253;
    detail::ensure_sodium();
  }
  byte_width_ = (element_bits_ + 7) / 8;
}

Field Field::make(std::uint64_t modulus) {
  require(modulus >= 2, ErrorCode::NonPrimeModulus, "modulus must be >= 2");
  require(is_prime_u64(modulus), ErrorCode::NonPrimeModulus,
          std::to_string(modulus) + " is composite");
  return Field(Kind::Small, modulus);
}

Field Field::make(ByteSpan modulus_le) {
  std::array<std::uint64_t, 4> limbs{};
  for (std::size_t i = 0; i < modulus_le.size(); ++i) {
    if (i >= 32) {
      require(modulus_le[i] == 0, ErrorCode::NonPrimeModulus, "modulus wider than 256 bits");
      continue;
    }
    limbs[i / 8] |= static_cast<std::uint64_t>(modulus_le[i]) << (8 * (i % 8));
  }
  if (limbs[1] == 0 && limbs[2] == 0 && limbs[3] == 0) return make(limbs[0]);
  require(limbs == kRistrettoOrder, ErrorCode::NonPrimeModulus,
          "moduli above 2^64 must be a whitelisted group order");
  return ristretto255_scalars();
}

Field Field::ristretto255_scalars() { return Field(Kind::Ristretto255, 0); }

Bytes Field::modulus_bytes() const {
  Bytes out(byte_width_);
  if (is_small()) {
    for (std::size_t i = 0; i < byte_width_; ++i) out[i] = static_cast<std::uint8_t>(q_ >> (8 * i));
  } else {
    std::memcpy(out.data(), kRistrettoOrder.data(), 32);
  }
  return out;
}

double Field::cardinality() const {
  if (is_small()) return static_cast<double>(q_);
  return std::ldexp(1.0, 252);
}

std::string Field::name() const {
  if (is_small()) return "GF(" + std::to_string(q_) + ")";
  return "ristretto255-scalars";
}

Scalar Field::from_u64(std::uint64_t v) const {
  return is_small() ? Scalar::from_u64(v % q_) : Scalar::from_u64(v);
}

bool Field::is_canonical(const Scalar& s) const {
  if (is_small()) return s.limbs[1] == 0 && s.limbs[2] == 0 && s.limbs[3] == 0 && s.limbs[0] < q_;
  return less_than(s.limbs, kRistrettoOrder);
}

bool Field::try_from_bytes(ByteSpan le, Scalar& out) const {
  if (le.size() != byte_width_) return false;
  Scalar s;
  std::memcpy(raw(s), le.data(), le.size());
  if (!is_canonical(s)) return false;
  out = s;
  return true;
}

Scalar Field::add(const Scalar& a, const Scalar& b) const {
  if (is_small()) {
    const unsigned __int128 sum = static_cast<unsigned __int128>(a.limbs[0]) + b.limbs[0];
    return Scalar::from_u64(static_cast<std::uint64_t>(sum >= q_ ? sum - q_ : sum));
  }
  Scalar r;
  crypto_core_ristretto255_scalar_add(raw(r), raw(a), raw(b));
  return r;
}

Scalar Field::sub(const Scalar& a, const Scalar& b) const {
  if (is_small()) {
    return Scalar::from_u64(a.limbs[0] >= b.limbs[0] ? a.limbs[0] - b.limbs[0]
                                                     : q_ - (b.limbs[0] - a.limbs[0]));
  }
  Scalar r;
  crypto_core_ristretto255_scalar_sub(raw(r), raw(a), raw(b));
  return r;
}

Scalar Field::neg(const Scalar& a) const {
  if (is_small()) return Scalar::from_u64(a.limbs[0] == 0 ? 0 : q_ - a.limbs[0]);
  Scalar r;
  crypto_core_ristretto255_scalar_negate(raw(r), raw(a));
  return r;
}

Scalar Field::mul(const Scalar& a, const Scalar& b) const {
  if (is_small()) return Scalar::from_u64(mulmod(a.limbs[0], b.limbs[0], q_));
  Scalar r;
  crypto_core_ristretto255_scalar_mul(raw(r), raw(a), raw(b));
  return r;
}

Scalar Field::inv(const Scalar& a) const {
  require(!a.is_zero(), ErrorCode::DomainError, "inverse of zero");
  if (is_small()) return Scalar::from_u64(powmod(a.limbs[0], q_ - 2, q_));
  Scalar r;
  crypto_core_ristretto255_scalar_invert(raw(r), raw(a));
  return r;
}

Scalar Field::pow(const Scalar& base, std::uint64_t exponent) const {
  Scalar result = one();
  Scalar b = base;
  while (exponent > 0) {
    if (exponent & 1) result = mul(result, b);
    b = mul(b, b);
    exponent >>= 1;
  }
  return result;
}

void Field::encode(const Scalar& s, ByteWriter& out) const {
  out.put_bytes(ByteSpan(raw(s), byte_width_));
}

Scalar Field::decode(ByteReader& in) const {
  Scalar s;
  require(try_from_bytes(in.get_bytes(byte_width_), s), ErrorCode::MalformedEncoding,
          "scalar not canonical in " + name());
  return s;
}

// ---------------------------------------------------------------------------
// Vectors and matrices

ScalarVector ScalarVector::from_u64s(Field f, std::span<const std::uint64_t> values) {
  std::vector<Scalar> e;
  e.reserve(values.size());
  for (auto v : values) e.push_back(f.from_u64(v));
  return {f, std::move(e)};
}

ScalarVector ScalarVector::unit(Field f, std::size_t n, std::size_t index) {
  auto v = zeros(f, n);
  v[index] = f.one();
  return v;
}

bool ScalarVector::is_zero() const {
  return std::all_of(entries.begin(), entries.end(), [](const Scalar& s) { return s.is_zero(); });
}

void ScalarVector::encode(ByteWriter& out) const {
  out.put_u32(static_cast<std::uint32_t>(entries.size()));
  for (const auto& s : entries) field.encode(s, out);
}

ScalarVector ScalarVector::decode(Field f, ByteReader& in) {
  const std::uint32_t n = in.get_u32();
  require(in.remaining() / f.byte_width() >= n, ErrorCode::MalformedEncoding,
          "vector length exceeds input");
  std::vector<Scalar> e;
  e.reserve(n);
  for (std::uint32_t i = 0; i < n; ++i) e.push_back(f.decode(in));
  return {f, std::move(e)};
}

ScalarMatrix ScalarMatrix::identity(Field f, std::size_t n) {
  ScalarMatrix m(f, n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = f.one();
  return m;
}

ScalarMatrix ScalarMatrix::from_u64s(Field f, std::size_t r, std::size_t c,
                                     std::span<const std::uint64_t> row_major) {
  require(row_major.size() == r * c, ErrorCode::DimensionMismatch, "matrix literal size");
  ScalarMatrix m(f, r, c);
  for (std::size_t i = 0; i < row_major.size(); ++i) m.data[i] = f.from_u64(row_major[i]);
  return m;
}

ScalarVector ScalarMatrix::row_vector(std::size_t r) const {
  auto span = row(r);
  return {field, std::vector<Scalar>(span.begin(), span.end())};
}

ScalarVector ScalarMatrix::column(std::size_t c) const {
  auto v = ScalarVector::zeros(field, rows);
  for (std::size_t r = 0; r < rows; ++r) v[r] = at(r, c);
  return v;
}

ScalarMatrix ScalarMatrix::transpose() const {
  ScalarMatrix t(field, cols, rows);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) t.at(c, r) = at(r, c);
  return t;
}

void ScalarMatrix::encode(ByteWriter& out) const {
  out.put_u32(static_cast<std::uint32_t>(rows));
  out.put_u32(static_cast<std::uint32_t>(cols));
  for (const auto& s : data) field.encode(s, out);
}

ScalarMatrix ScalarMatrix::decode(Field f, ByteReader& in) {
  const std::uint32_t r = in.get_u32();
  const std::uint32_t c = in.get_u32();
  const std::uint64_t count = static_cast<std::uint64_t>(r) * c;
  require(in.remaining() / f.byte_width() >= count, ErrorCode::MalformedEncoding,
          "matrix size exceeds input");
  ScalarMatrix m(f, r, c);
  for (auto& s : m.data) s = f.decode(in);
  return m;
}

Scalar dot(const ScalarVector& a, const ScalarVector& b) {
  check_same(a.field, b.field);
  require(a.size() == b.size(), ErrorCode::DimensionMismatch, "dot product lengths");
  const Field& f = a.field;
  Scalar acc;
  for (std::size_t i = 0; i < a.size(); ++i) acc = f.add(acc, f.mul(a[i], b[i]));
  return acc;
}

ScalarVector add(const ScalarVector& a, const ScalarVector& b) {
  check_same(a.field, b.field);
  require(a.size() == b.size(), ErrorCode::DimensionMismatch, "vector add lengths");
  auto out = ScalarVector::zeros(a.field, a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a.field.add(a[i], b[i]);
  return out;
}

ScalarVector sub(const ScalarVector& a, const ScalarVector& b) {
  check_same(a.field, b.field);
  require(a.size() == b.size(), ErrorCode::DimensionMismatch, "vector sub lengths");
  auto out = ScalarVector::zeros(a.field, a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a.field.sub(a[i], b[i]);
  return out;
}

ScalarVector scale(const Scalar& k, const ScalarVector& a) {
  auto out = ScalarVector::zeros(a.field, a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a.field.mul(k, a[i]);
  return out;
}

ScalarVector mat_vec_mul(const ScalarMatrix& v, const ScalarVector& c) {
  check_same(v.field, c.field);
  require(v.cols == c.size(), ErrorCode::DimensionMismatch,
          "matrix has " + std::to_string(v.cols) + " columns, vector has " +
              std::to_string(c.size()) + " entries");
  const Field& f = v.field;
  auto out = ScalarVector::zeros(f, v.rows);
  for (std::size_t r = 0; r < v.rows; ++r) {
    Scalar acc;
    for (std::size_t i = 0; i < v.cols; ++i) acc = f.add(acc, f.mul(v.at(r, i), c[i]));
    out[r] = acc;
  }
  return out;
}

ScalarVector vec_mat_mul(const ScalarVector& p, const ScalarMatrix& v) {
  check_same(v.field, p.field);
  require(v.rows == p.size(), ErrorCode::DimensionMismatch,
          "matrix has " + std::to_string(v.rows) + " rows, vector has " +
              std::to_string(p.size()) + " entries");
  const Field& f = v.field;
  auto out = ScalarVector::zeros(f, v.cols);
  for (std::size_t r = 0; r < v.rows; ++r) {
    if (p[r].is_zero()) continue;
    for (std::size_t i = 0; i < v.cols; ++i) out[i] = f.add(out[i], f.mul(p[r], v.at(r, i)));
  }
  return out;
}

ScalarMatrix mat_mul(const ScalarMatrix& a, const ScalarMatrix& b) {
  check_same(a.field, b.field);
  require(a.cols == b.rows, ErrorCode::DimensionMismatch, "inner dimensions differ");
  const Field& f = a.field;
  ScalarMatrix out(f, a.rows, b.cols);
  for (std::size_t r = 0; r < a.rows; ++r)
    for (std::size_t k = 0; k < a.cols; ++k) {
      const Scalar& x = a.at(r, k);
      if (x.is_zero()) continue;
      for (std::size_t c = 0; c < b.cols; ++c) out.at(r, c) = f.add(out.at(r, c), f.mul(x, b.at(k, c)));
    }
  return out;
}

std::size_t rank(const ScalarMatrix& m) {
  const Field& f = m.field;
  ScalarMatrix w = m;
  std::size_t pivot_row = 0;
  for (std::size_t col = 0; col < w.cols && pivot_row < w.rows; ++col) {
    std::size_t sel = pivot_row;
    while (sel < w.rows && w.at(sel, col).is_zero()) ++sel;
    if (sel == w.rows) continue;
    if (sel != pivot_row)
      for (std::size_t c = col; c < w.cols; ++c) std::swap(w.at(sel, c), w.at(pivot_row, c));
    const Scalar pivot = w.at(pivot_row, col);
    for (std::size_t r = pivot_row + 1; r < w.rows; ++r) {
      const Scalar factor = w.at(r, col);
      if (factor.is_zero()) continue;
      // row_r <- pivot * row_r - factor * row_pivot
      for (std::size_t c = col; c < w.cols; ++c)
        w.at(r, c) = f.sub(f.mul(pivot, w.at(r, c)), f.mul(factor, w.at(pivot_row, c)));
    }
    ++pivot_row;
  }
  return pivot_row;
}

ScalarMatrix solve(const ScalarMatrix& a, const ScalarMatrix& b) {
  check_same(a.field, b.field);
  require(a.rows == a.cols, ErrorCode::DimensionMismatch, "solve needs a square matrix");
  require(b.rows == a.rows, ErrorCode::DimensionMismatch, "right-hand side row count");
  const Field& f = a.field;
  const std::size_t n = a.rows;
  ScalarMatrix lhs = a;
  ScalarMatrix rhs = b;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t sel = col;
    while (sel < n && lhs.at(sel, col).is_zero()) ++sel;
    require(sel < n, ErrorCode::SingularMatrix, "no pivot in column " + std::to_string(col));
    if (sel != col) {
      for (std::size_t c = 0; c < n; ++c) std::swap(lhs.at(sel, c), lhs.at(col, c));
      for (std::size_t c = 0; c < rhs.cols; ++c) std::swap(rhs.at(sel, c), rhs.at(col, c));
    }
    const Scalar inv = f.inv(lhs.at(col, col));
    for (std::size_t c = 0; c < n; ++c) lhs.at(col, c) = f.mul(inv, lhs.at(col, c));
    for (std::size_t c = 0; c < rhs.cols; ++c) rhs.at(col, c) = f.mul(inv, rhs.at(col, c));
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col) continue;
      const Scalar factor = lhs.at(r, col);
      if (factor.is_zero()) continue;
      for (std::size_t c = 0; c < n; ++c) lhs.at(r, c) = f.sub(lhs.at(r, c), f.mul(factor, lhs.at(col, c)));
      for (std::size_t c = 0; c < rhs.cols; ++c)
        rhs.at(r, c) = f.sub(rhs.at(r, c), f.mul(factor, rhs.at(col, c)));
    }
  }
  return rhs;
}

}  // namespace rlnc_das
