#include <gtest/gtest.h>

#include "rlnc_das/error.hpp"
#include "rlnc_das/group.hpp"
#include "test_util.hpp"

using namespace rlnc_das;

namespace {

std::vector<Group> groups() { return {Group::ristretto255(), Group::transparent(Field::make(17))}; }

}  // namespace

TEST(DeriveBasis, DeterministicAndPrefixStable) {
  for (const Group& g : groups()) {
    const auto a = derive_basis(g, "g", 4);
    const auto b = derive_basis(g, "g", 4);
    EXPECT_EQ(a.generators, b.generators);
    const auto three = derive_basis(g, "g", 3);
    const auto five = derive_basis(g, "g", 5);
    EXPECT_TRUE(std::equal(three.generators.begin(), three.generators.end(), five.generators.begin()));
    EXPECT_EQ(five.prefix(3).generators, three.generators);
    for (const auto& e : five.generators) {
      EXPECT_TRUE(g.is_valid(e));
      EXPECT_NE(e, g.identity());
    }
  }
}

TEST(DeriveBasis, DistinctLabels) {
  const Group g = Group::ristretto255();
  const auto a = derive_basis(g, "g", 2);
  const auto b = derive_basis(g, "h", 2);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) EXPECT_NE(a[i], b[j]);
  EXPECT_NE(a[0], a[1]);
}

TEST(Group, ScalarFieldMatchesOrder) {
  const Group g = Group::ristretto255();
  EXPECT_EQ(g.scalar_field(), Field::ristretto255_scalars());
  EXPECT_EQ(g.element_bytes(), 32u);
  // q * P = identity, (q - 1) * P = -P.
  const Field& f = g.scalar_field();
  const auto P = derive_basis(g, "order", 1)[0];
  EXPECT_EQ(g.mul(f.neg(f.one()), P), g.neg(P));
  EXPECT_EQ(g.add(g.mul(f.neg(f.one()), P), P), g.identity());
}

TEST(Group, EncodingRoundTripAndRejection) {
  const Group g = Group::ristretto255();
  const auto basis = derive_basis(g, "enc", 8);
  for (const auto& e : basis.generators) {
    ByteWriter w;
    g.encode(e, w);
    ASSERT_EQ(w.size(), 32u);
    ByteReader r(w.bytes());
    EXPECT_EQ(g.decode(r), e);
  }
  Bytes bad(32, 0xff);
  ByteReader r(bad);
  EXPECT_THROW(g.decode(r), Error);

  const Group t = Group::transparent(Field::make(257));
  EXPECT_EQ(t.element_bytes(), 2u);
  const Bytes too_big = {0x01, 0x01};  // 257
  ByteReader rt(too_big);
  EXPECT_THROW(t.decode(rt), Error);
}

TEST(PedersenCommit, Examples) {
  for (const Group& g : groups()) {
    const Field& f = g.scalar_field();
    const auto basis = derive_basis(g, "g", 5);
    EXPECT_EQ(pedersen_commit(basis, ScalarVector::zeros(f, 5)), g.identity());
    for (std::size_t j = 0; j < 5; ++j) EXPECT_EQ(pedersen_commit(basis, ScalarVector::unit(f, 5, j)), basis[j]);
    EXPECT_THROW(pedersen_commit(basis, ScalarVector::zeros(f, 4)), Error);
  }
}

TEST(PedersenCommit, StraightLineSum) {
  const Group g = Group::ristretto255();
  const Field& f = g.scalar_field();
  const auto basis = derive_basis(g, "g", 6);
  auto rng = rlnc_das::testing::rng(11);
  for (int trial = 0; trial < 10; ++trial) {
    const auto v = ScalarVector::random(f, 6, rng);
    GroupElement acc = g.identity();
    for (std::size_t j = 0; j < 6; ++j) acc = g.add(acc, g.mul(v[j], basis[j]));
    EXPECT_EQ(pedersen_commit(basis, v), acc);
  }
}

TEST(PedersenCommit, Homomorphism) {
  for (const Group& g : groups()) {
    const Field& f = g.scalar_field();
    const auto basis = derive_basis(g, "g", 7);
    auto rng = rlnc_das::testing::rng(12);
    for (int trial = 0; trial < 20; ++trial) {
      const auto a = ScalarVector::random(f, 7, rng);
      const auto b = ScalarVector::random(f, 7, rng);
      const Scalar alpha = f.random(rng);
      EXPECT_EQ(pedersen_commit(basis, add(scale(alpha, a), b)),
                g.add(g.mul(alpha, pedersen_commit(basis, a)), pedersen_commit(basis, b)));
    }
  }
}

TEST(CombineCommitments, Examples) {
  for (const Group& g : groups()) {
    const Field& f = g.scalar_field();
    auto rng = rlnc_das::testing::rng(13);
    const auto basis = derive_basis(g, "g", 6);
    const auto V = ScalarMatrix::random(f, 4, 6, rng);
    RowCommitments coms;
    for (std::size_t r = 0; r < 4; ++r) coms.rows.push_back(pedersen_commit(basis, V.row_vector(r)));
    for (std::size_t j = 0; j < 4; ++j) EXPECT_EQ(combine_commitments(g, ScalarVector::unit(f, 4, j), coms), coms.rows[j]);
    EXPECT_EQ(combine_commitments(g, ScalarVector::zeros(f, 4), coms), g.identity());
    for (int trial = 0; trial < 10; ++trial) {
      const auto p = ScalarVector::random(f, 4, rng);
      EXPECT_EQ(combine_commitments(g, p, coms), pedersen_commit(basis, vec_mat_mul(p, V)));
    }
    EXPECT_THROW(combine_commitments(g, ScalarVector::zeros(f, 3), coms), Error);
  }
}

TEST(TransparentGroup, IsFieldArithmetic) {
  const Field f = Field::make(17);
  const Group g = Group::transparent(f);
  auto rng = rlnc_das::testing::rng(14);
  for (int i = 0; i < 100; ++i) {
    const Scalar a = f.random(rng), b = f.random(rng), k = f.random(rng);
    GroupElement A, B;
    A.bytes[0] = static_cast<std::uint8_t>(a.low_u64());
    B.bytes[0] = static_cast<std::uint8_t>(b.low_u64());
    EXPECT_EQ(g.add(A, B).bytes[0], f.add(a, b).low_u64());
    EXPECT_EQ(g.mul(k, A).bytes[0], f.mul(k, a).low_u64());
  }
}
