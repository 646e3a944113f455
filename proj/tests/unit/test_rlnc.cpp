#include <gtest/gtest.h>

#include "rlnc_das/error.hpp"
#include "rlnc_das/rlnc.hpp"
#include "test_util.hpp"

using namespace rlnc_das;

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

}  // namespace

TEST(RlncEncode, Examples) {
  const Field f = Field::make(7);
  const std::uint64_t v[] = {1, 2, 3, 4};
  const auto V = ScalarMatrix::from_u64s(f, 2, 2, v);
  const std::uint64_t c[] = {2, 3};
  const std::uint64_t w[] = {1, 4};
  EXPECT_EQ(rlnc_encode(V, ScalarVector::from_u64s(f, c)), ScalarVector::from_u64s(f, w));
  EXPECT_EQ(rlnc_encode(V, ScalarVector::unit(f, 2, 0)), V.column(0));
  EXPECT_TRUE(rlnc_encode(V, ScalarVector::zeros(f, 2)).is_zero());
  EXPECT_EQ(code_of([&] { rlnc_encode(V, ScalarVector::zeros(f, 3)); }), ErrorCode::DimensionMismatch);
}

TEST(RlncDecoder, RankTracking) {
  const Field f = Field::make(257);
  auto rng = rlnc_das::testing::rng(31);
  const auto V = ScalarMatrix::random(f, 3, 4, rng);
  RlncDecoder dec(f, 3, 4);
  const auto c1 = ScalarVector::random(f, 4, rng);
  auto r = dec.add({c1, rlnc_encode(V, c1)});
  EXPECT_TRUE(r.rank_increased);
  EXPECT_EQ(r.new_rank, 1u);
  const auto c2 = scale(f.from_u64(2), c1);
  r = dec.add({c2, rlnc_encode(V, c2)});
  EXPECT_FALSE(r.rank_increased);
  EXPECT_TRUE(r.consistent);
  EXPECT_EQ(dec.rank(), 1u);
  EXPECT_EQ(code_of([&] { dec.add({ScalarVector::zeros(f, 3), ScalarVector::zeros(f, 3)}); }),
            ErrorCode::DimensionMismatch);
}

TEST(RlncDecoder, RankMatchesFieldRank) {
  const Field f = Field::make(257);
  auto rng = rlnc_das::testing::rng(32);
  for (int trial = 0; trial < 50; ++trial) {
    const auto V = ScalarMatrix::random(f, 2, 8, rng);
    RlncDecoder dec(f, 2, 8);
    ScalarMatrix C(f, 8, 8);
    std::size_t previous = 0;
    for (std::size_t k = 0; k < 8; ++k) {
      auto c = ScalarVector::random(f, 8, rng);
      // Every third trial feeds a few dependent rows.
      if (trial % 3 == 0 && k >= 5) c = add(C.row_vector(0), C.row_vector(k - 1));
      for (std::size_t j = 0; j < 8; ++j) C.at(k, j) = c[j];
      const auto r = dec.add({c, rlnc_encode(V, c)});
      EXPECT_GE(r.new_rank, previous);
      previous = r.new_rank;
    }
    EXPECT_EQ(dec.rank(), rank(C));
  }
}

TEST(RlncDecoder, UnitVectorsReturnData) {
  const Field f = Field::make(17);
  auto rng = rlnc_das::testing::rng(33);
  const auto V = ScalarMatrix::random(f, 4, 5, rng);
  RlncDecoder dec(f, 4, 5);
  for (std::size_t i = 0; i < 5; ++i) {
    EXPECT_EQ(code_of([&] { dec.reconstruct(); }), ErrorCode::InsufficientRank);
    const auto e = ScalarVector::unit(f, 5, i);
    dec.add({e, rlnc_encode(V, e)});
  }
  EXPECT_TRUE(dec.decodable());
  EXPECT_EQ(dec.reconstruct(), V);
}

TEST(RlncDecoder, RoundTripRandomInvertible) {
  for (const Field f : {Field::make(17), Field::make(257), Field::ristretto255_scalars()}) {
    auto rng = rlnc_das::testing::rng(34);
    for (int trial = 0; trial < 20; ++trial) {
      const auto V = ScalarMatrix::random(f, 4, 6, rng);
      RlncDecoder dec(f, 4, 6);
      while (!dec.decodable()) {
        const auto c = ScalarVector::random(f, 6, rng);
        dec.add({c, rlnc_encode(V, c)});
      }
      EXPECT_EQ(dec.reconstruct(), V);
    }
  }
}

TEST(RlncDecoder, DetectsInconsistentPayload) {
  const Field f = Field::make(17);
  auto rng = rlnc_das::testing::rng(35);
  const auto V = ScalarMatrix::random(f, 2, 2, rng);
  RlncDecoder dec(f, 2, 2);
  const auto c1 = ScalarVector::unit(f, 2, 0);
  const auto c2 = ScalarVector::unit(f, 2, 1);
  dec.add({c1, rlnc_encode(V, c1)});
  dec.add({c2, rlnc_encode(V, c2)});
  const auto c3 = add(c1, c2);
  auto wrong = rlnc_encode(V, c3);
  wrong[0] = f.add(wrong[0], f.one());
  const auto r = dec.add({c3, wrong});
  EXPECT_FALSE(r.consistent);
  EXPECT_TRUE(dec.saw_inconsistency());
  EXPECT_EQ(code_of([&] { dec.reconstruct(); }), ErrorCode::InconsistentSamples);
}

TEST(CodedSample, RoundTrip) {
  const Field f = Field::make(257);
  auto rng = rlnc_das::testing::rng(36);
  const CodedSample s{ScalarVector::random(f, 5, rng), ScalarVector::random(f, 3, rng)};
  ByteWriter w;
  s.encode(w);
  ByteReader r(w.bytes());
  EXPECT_EQ(CodedSample::decode(f, r), s);
}
