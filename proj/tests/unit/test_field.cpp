#include <gtest/gtest.h>

#include <set>

#include "rlnc_das/error.hpp"
#include "rlnc_das/field.hpp"
#include "test_util.hpp"

using namespace rlnc_das;
using rlnc_das::testing::from_mpz;
using rlnc_das::testing::modulus_of;
using rlnc_das::testing::to_mpz;

namespace {

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::ConfigError;
}

Bytes le_bytes(const mpz_class& v, std::size_t width) {
  Bytes out(width);
  mpz_class x = v;
  for (auto& b : out) {
    b = static_cast<std::uint8_t>(mpz_class(x & 0xff).get_ui());
    x >>= 8;
  }
  return out;
}

}  // namespace

TEST(FieldNew, SmallPrime) {
  const Field f = Field::make(17);
  EXPECT_EQ(f.small_modulus(), 17u);
  EXPECT_EQ(f.byte_width(), 1u);
  EXPECT_EQ(Field::make(257).byte_width(), 2u);
  EXPECT_EQ(Field::make(65537).byte_width(), 3u);
}

TEST(FieldNew, CompositeRejected) {
  EXPECT_EQ(code_of([] { Field::make(16); }), ErrorCode::NonPrimeModulus);
  EXPECT_EQ(code_of([] { Field::make(1); }), ErrorCode::NonPrimeModulus);
  EXPECT_EQ(code_of([] { Field::make(0); }), ErrorCode::NonPrimeModulus);
  // Carmichael number and a semiprime near 2^60.
  EXPECT_EQ(code_of([] { Field::make(561); }), ErrorCode::NonPrimeModulus);
  EXPECT_EQ(code_of([] { Field::make(1000000007ULL * 998244353ULL); }), ErrorCode::NonPrimeModulus);
}

TEST(FieldNew, MillerRabinMatchesGmp) {
  auto rng = rlnc_das::testing::rng(7);
  for (int i = 0; i < 2000; ++i) {
    const std::uint64_t n = rng() >> (rng() % 60);
    const bool gmp_prime = mpz_probab_prime_p(mpz_class(std::to_string(n)).get_mpz_t(), 40) != 0;
    EXPECT_EQ(is_prime_u64(n), gmp_prime) << n;
  }
  EXPECT_TRUE(is_prime_u64(18446744073709551557ULL));  // largest 64-bit prime
}

TEST(FieldNew, CryptoGroupOrder) {
  const mpz_class l = rlnc_das::testing::ristretto_order();
  const Field f = Field::make(le_bytes(l, 32));
  EXPECT_EQ(f, Field::ristretto255_scalars());
  EXPECT_EQ(f.byte_width(), 32u);
  EXPECT_EQ(f.modulus_bytes(), le_bytes(l, 32));
  EXPECT_EQ(code_of([&] { Field::make(le_bytes(l + 2, 32)); }), ErrorCode::NonPrimeModulus);
  // A small modulus passed as bytes goes through the primality test.
  EXPECT_EQ(Field::make(le_bytes(257, 2)).small_modulus(), 257u);
}

TEST(MatVecMul, Examples) {
  const Field f = Field::make(7);
  const std::uint64_t v[] = {1, 2, 3, 4};
  const auto V = ScalarMatrix::from_u64s(f, 2, 2, v);
  const std::uint64_t c[] = {1, 1};
  const std::uint64_t expect[] = {3, 0};
  EXPECT_EQ(mat_vec_mul(V, ScalarVector::from_u64s(f, c)), ScalarVector::from_u64s(f, expect));
  EXPECT_EQ(mat_vec_mul(V, ScalarVector::unit(f, 2, 1)), V.column(1));
}

TEST(MatVecMul, SchoolbookOracle) {
  const Field f = Field::make(17);
  auto rng = rlnc_das::testing::rng(1);
  for (int trial = 0; trial < 50; ++trial) {
    const auto V = ScalarMatrix::random(f, 4, 5, rng);
    const auto c = ScalarVector::random(f, 5, rng);
    const auto got = mat_vec_mul(V, c);
    for (std::size_t j = 0; j < 4; ++j) {
      std::uint64_t acc = 0;
      for (std::size_t i = 0; i < 5; ++i) acc += V.at(j, i).low_u64() * c[i].low_u64();
      EXPECT_EQ(got[j].low_u64(), acc % 17);
    }
  }
}

TEST(MatVecMul, Errors) {
  const Field f = Field::make(17);
  const ScalarMatrix V(f, 2, 3);
  EXPECT_EQ(code_of([&] { mat_vec_mul(V, ScalarVector::zeros(f, 2)); }), ErrorCode::DimensionMismatch);
  EXPECT_EQ(code_of([&] { mat_vec_mul(V, ScalarVector::zeros(Field::make(19), 3)); }), ErrorCode::FieldMismatch);
}

TEST(MatVecMul, Linear) {
  for (const Field f : {Field::make(17), Field::ristretto255_scalars()}) {
    auto rng = rlnc_das::testing::rng(2);
    for (int trial = 0; trial < 20; ++trial) {
      const auto V = ScalarMatrix::random(f, 3, 4, rng);
      const auto c1 = ScalarVector::random(f, 4, rng);
      const auto c2 = ScalarVector::random(f, 4, rng);
      const Scalar a = f.random(rng), b = f.random(rng);
      EXPECT_EQ(mat_vec_mul(V, add(scale(a, c1), scale(b, c2))),
                add(scale(a, mat_vec_mul(V, c1)), scale(b, mat_vec_mul(V, c2))));
    }
  }
}

TEST(Rank, Trivial) {
  const Field f = Field::make(5);
  EXPECT_EQ(rank(ScalarMatrix(f, 3, 4)), 0u);
  EXPECT_EQ(rank(ScalarMatrix::identity(f, 6)), 6u);
}

TEST(Rank, RowSpanEnumeration) {
  // rank = log_5 |row span|, the span enumerated over all 125 coefficient triples.
  const Field f = Field::make(5);
  auto rng = rlnc_das::testing::rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    ScalarMatrix M = ScalarMatrix::random(f, 3, 8, rng);
    // Bias towards deficient matrices.
    if (trial % 3 == 1) {
      for (std::size_t c = 0; c < 8; ++c) M.at(2, c) = f.add(M.at(0, c), f.mul(f.from_u64(3), M.at(1, c)));
    }
    if (trial % 3 == 2) {
      for (std::size_t c = 0; c < 8; ++c) {
        M.at(1, c) = f.mul(f.from_u64(2), M.at(0, c));
        M.at(2, c) = f.mul(f.from_u64(4), M.at(0, c));
      }
    }
    std::set<std::vector<std::uint64_t>> span;
    for (std::uint64_t a = 0; a < 5; ++a)
      for (std::uint64_t b = 0; b < 5; ++b)
        for (std::uint64_t c = 0; c < 5; ++c) {
          std::vector<std::uint64_t> v(8);
          for (std::size_t j = 0; j < 8; ++j)
            v[j] = (a * M.at(0, j).low_u64() + b * M.at(1, j).low_u64() + c * M.at(2, j).low_u64()) % 5;
          span.insert(v);
        }
    std::size_t expected = 0;
    for (std::size_t size = span.size(); size > 1; size /= 5) ++expected;
    EXPECT_EQ(rank(M), expected);
  }
}

TEST(Rank, InvariantUnderTransposeSwapScale) {
  const Field f = Field::make(17);
  auto rng = rlnc_das::testing::rng(4);
  for (int trial = 0; trial < 100; ++trial) {
    ScalarMatrix M = ScalarMatrix::random(f, 4, 6, rng);
    if (trial % 2) M.at(3, 0) = M.at(2, 0);
    const std::size_t r = rank(M);
    EXPECT_EQ(rank(M.transpose()), r);
    ScalarMatrix S = M;
    for (std::size_t c = 0; c < 6; ++c) std::swap(S.at(0, c), S.at(3, c));
    EXPECT_EQ(rank(S), r);
    const Scalar k = f.random_nonzero(rng);
    for (std::size_t c = 0; c < 6; ++c) S.at(1, c) = f.mul(k, S.at(1, c));
    EXPECT_EQ(rank(S), r);
  }
}

TEST(Solve, Examples) {
  const Field f = Field::make(7);
  const std::uint64_t a[] = {2, 0, 0, 3};
  const std::uint64_t b[] = {4, 3};
  const std::uint64_t x[] = {2, 1};
  EXPECT_EQ(solve(ScalarMatrix::from_u64s(f, 2, 2, a), ScalarMatrix::from_u64s(f, 2, 1, b)),
            ScalarMatrix::from_u64s(f, 2, 1, x));
  const auto B = ScalarMatrix::from_u64s(f, 2, 1, b);
  EXPECT_EQ(solve(ScalarMatrix::identity(f, 2), B), B);
  const std::uint64_t singular[] = {1, 2, 2, 4};
  EXPECT_EQ(code_of([&] { solve(ScalarMatrix::from_u64s(f, 2, 2, singular), B); }), ErrorCode::SingularMatrix);
}

TEST(Solve, RandomInvertibleMultiplyBack) {
  for (const Field f : {Field::make(17), Field::ristretto255_scalars()}) {
    auto rng = rlnc_das::testing::rng(5);
    for (int trial = 0; trial < 30; ++trial) {
      ScalarMatrix A = ScalarMatrix::random(f, 6, 6, rng);
      if (rank(A) < 6) continue;
      const ScalarMatrix X0 = ScalarMatrix::random(f, 6, 3, rng);
      const ScalarMatrix B = mat_mul(A, X0);
      const ScalarMatrix X = solve(A, B);
      EXPECT_EQ(mat_mul(A, X), B);
      EXPECT_EQ(X, X0);
    }
  }
}

TEST(FieldArithmetic, AgainstGmp) {
  for (const Field f : {Field::make(17), Field::make(18446744073709551557ULL), Field::ristretto255_scalars()}) {
    const mpz_class q = modulus_of(f);
    auto rng = rlnc_das::testing::rng(6);
    for (int i = 0; i < 300; ++i) {
      const Scalar a = f.random(rng), b = f.random(rng);
      const mpz_class A = to_mpz(a), B = to_mpz(b);
      ASSERT_LT(A, q);
      EXPECT_EQ(to_mpz(f.add(a, b)), mpz_class((A + B) % q));
      EXPECT_EQ(to_mpz(f.sub(a, b)), mpz_class(((A - B) % q + q) % q));
      EXPECT_EQ(to_mpz(f.mul(a, b)), mpz_class((A * B) % q));
      EXPECT_EQ(to_mpz(f.neg(a)), mpz_class((q - A) % q));
      if (!a.is_zero()) {
        mpz_class inv;
        mpz_invert(inv.get_mpz_t(), A.get_mpz_t(), q.get_mpz_t());
        EXPECT_EQ(to_mpz(f.inv(a)), inv);
      }
      mpz_class pw;
      mpz_powm_ui(pw.get_mpz_t(), A.get_mpz_t(), 1000003, q.get_mpz_t());
      EXPECT_EQ(to_mpz(f.pow(a, 1000003)), pw);
    }
  }
}

TEST(FieldArithmetic, Properties) {
  for (const Field f : {Field::make(17), Field::ristretto255_scalars()}) {
    auto rng = rlnc_das::testing::rng(8);
    for (int i = 0; i < 500; ++i) {
      const Scalar a = f.random(rng), b = f.random(rng), c = f.random(rng);
      EXPECT_EQ(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
      EXPECT_EQ(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
      EXPECT_TRUE(f.add(a, f.neg(a)).is_zero());
      if (!a.is_zero()) EXPECT_EQ(f.mul(a, f.inv(a)), f.one());
    }
    EXPECT_EQ(code_of([&] { f.inv(f.zero()); }), ErrorCode::DomainError);
  }
}

TEST(FieldCodec, RoundTripAndCanonical) {
  const Field f = Field::ristretto255_scalars();
  auto rng = rlnc_das::testing::rng(9);
  for (int i = 0; i < 50; ++i) {
    const auto v = ScalarVector::random(f, 5, rng);
    ByteWriter w;
    v.encode(w);
    EXPECT_EQ(w.size(), 4u + 5 * 32);
    ByteReader r(w.bytes());
    EXPECT_EQ(ScalarVector::decode(f, r), v);
  }
  // q itself is not canonical.
  const Bytes q = le_bytes(rlnc_das::testing::ristretto_order(), 32);
  ByteReader r(q);
  EXPECT_EQ(code_of([&] { f.decode(r); }), ErrorCode::MalformedEncoding);
  const Field small = Field::make(17);
  const Bytes eighteen = {18};
  ByteReader r2(eighteen);
  EXPECT_EQ(code_of([&] { small.decode(r2); }), ErrorCode::MalformedEncoding);

  const auto M = ScalarMatrix::random(small, 3, 4, rng);
  ByteWriter w;
  M.encode(w);
  EXPECT_EQ(w.size(), 8u + 12);
  ByteReader rm(w.bytes());
  EXPECT_EQ(ScalarMatrix::decode(small, rm), M);
}

TEST(FieldRandom, CryptoBytesRoundTripGmp) {
  const Field f = Field::ristretto255_scalars();
  const mpz_class q = rlnc_das::testing::ristretto_order();
  EXPECT_EQ(to_mpz(f.sub(f.zero(), f.one())), q - 1);
  EXPECT_EQ(from_mpz(q - 1), f.neg(f.one()));
}
