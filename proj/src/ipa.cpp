#include "rlnc_das/ipa.hpp"

#include <bit>

namespace rlnc_das {
namespace {

void check_statement(const GeneratorBasis& g, const GeneratorBasis& h, std::size_t n) {
  require(g.group == h.group, ErrorCode::FieldMismatch, "bases live in different groups");
  require(n >= 1, ErrorCode::DimensionMismatch, "empty vectors");
  require(is_power_of_two(n), ErrorCode::NonPowerOfTwoLength,
          "length " + std::to_string(n) + " is not a power of two");
  require(g.size() == n && h.size() == n, ErrorCode::DimensionMismatch,
          "bases of length " + std::to_string(g.size()) + "/" + std::to_string(h.size()) +
              " for vectors of length " + std::to_string(n));
}

Scalar inner(const Field& f, std::span<const Scalar> a, std::span<const Scalar> b) {
  Scalar acc;
  for (std::size_t i = 0; i < a.size(); ++i) acc = f.add(acc, f.mul(a[i], b[i]));
  return acc;
}

}  // namespace

bool is_power_of_two(std::size_t n) { return std::has_single_bit(n); }

std::size_t next_power_of_two(std::size_t n) { return n <= 1 ? 1 : std::bit_ceil(n); }

std::size_t log2_exact(std::size_t n) {
  require(is_power_of_two(n), ErrorCode::NonPowerOfTwoLength, std::to_string(n));
  return static_cast<std::size_t>(std::countr_zero(n));
}

ScalarVector zero_pad(const ScalarVector& v, std::size_t n) {
  require(n >= v.size(), ErrorCode::DimensionMismatch, "cannot pad to a shorter length");
  ScalarVector out = v;
  out.entries.resize(n);
  return out;
}

void IpaProof::encode(const Group& group, ByteWriter& out) const {
  out.put_u8(static_cast<std::uint8_t>(rounds.size()));
  for (const auto& [l, r] : rounds) {
    group.encode(l, out);
    group.encode(r, out);
  }
  group.scalar_field().encode(final_a, out);
  group.scalar_field().encode(final_b, out);
}

Bytes IpaProof::serialize(const Group& group) const {
  ByteWriter w;
  encode(group, w);
  return std::move(w).take();
}

IpaProof IpaProof::decode(const Group& group, ByteReader& in) {
  IpaProof proof;
  const std::size_t count = in.get_u8();
  require(count <= kMaxIpaRounds, ErrorCode::MalformedProof, "round count " + std::to_string(count));
  proof.rounds.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    GroupElement l = group.decode(in);
    GroupElement r = group.decode(in);
    proof.rounds.emplace_back(l, r);
  }
  proof.final_a = group.scalar_field().decode(in);
  proof.final_b = group.scalar_field().decode(in);
  return proof;
}

std::size_t IpaProof::encoded_size(const Group& group, std::size_t n) {
  return kIpaHeaderBytes + 2 * log2_exact(n) * group.element_bytes() +
         2 * group.scalar_field().byte_width();
}

IpaProof ipa_prove(Transcript& transcript, const GeneratorBasis& g, const GeneratorBasis& h,
                   const GroupElement& u, const ScalarVector& a, const ScalarVector& b) {
  require(a.size() == b.size(), ErrorCode::DimensionMismatch, "a and b lengths differ");
  check_statement(g, h, a.size());
  const Group& group = g.group;
  const Field& f = group.scalar_field();
  require(a.field == f && b.field == f, ErrorCode::FieldMismatch, "vectors not over the group order");

  std::vector<Scalar> av = a.entries;
  std::vector<Scalar> bv = b.entries;
  std::vector<GroupElement> gv = g.generators;
  std::vector<GroupElement> hv = h.generators;

  transcript.absorb_u64("ipa/n", a.size());
  IpaProof proof;
  for (std::size_t n = a.size(); n > 1; n /= 2) {
    const std::size_t half = n / 2;
    std::span<const Scalar> a_lo(av.data(), half), a_hi(av.data() + half, half);
    std::span<const Scalar> b_lo(bv.data(), half), b_hi(bv.data() + half, half);
    std::span<const GroupElement> g_lo(gv.data(), half), g_hi(gv.data() + half, half);
    std::span<const GroupElement> h_lo(hv.data(), half), h_hi(hv.data() + half, half);

    const Scalar c_left = inner(f, a_lo, b_hi);
    const Scalar c_right = inner(f, a_hi, b_lo);
    const GroupElement left =
        group.add(group.add(group.msm(a_lo, g_hi), group.msm(b_hi, h_lo)), group.mul(c_left, u));
    const GroupElement right =
        group.add(group.add(group.msm(a_hi, g_lo), group.msm(b_lo, h_hi)), group.mul(c_right, u));
    transcript.absorb_element("ipa/L", group, left);
    transcript.absorb_element("ipa/R", group, right);
    proof.rounds.emplace_back(left, right);

    const Scalar x = transcript.challenge_scalar("ipa/x", f);
    const Scalar x_inv = f.inv(x);
    for (std::size_t i = 0; i < half; ++i) {
      av[i] = f.add(f.mul(x, av[i]), f.mul(x_inv, av[half + i]));
      bv[i] = f.add(f.mul(x_inv, bv[i]), f.mul(x, bv[half + i]));
      gv[i] = group.add(group.mul(x_inv, gv[i]), group.mul(x, gv[half + i]));
      hv[i] = group.add(group.mul(x, hv[i]), group.mul(x_inv, hv[half + i]));
    }
    av.resize(half);
    bv.resize(half);
    gv.resize(half);
    hv.resize(half);
  }
  proof.final_a = av[0];
  proof.final_b = bv[0];
  return proof;
}

bool ipa_verify(Transcript& transcript, const GeneratorBasis& g, const GeneratorBasis& h,
                const GroupElement& u, const GroupElement& com_a, const GroupElement& com_b,
                const Scalar& z, const IpaProof& proof) {
  const std::size_t n = g.size();
  check_statement(g, h, n);
  const std::size_t k = log2_exact(n);
  require(proof.rounds.size() == k, ErrorCode::MalformedProof,
          std::to_string(proof.rounds.size()) + " rounds for length " + std::to_string(n));
  const Group& group = g.group;
  const Field& f = group.scalar_field();

  transcript.absorb_u64("ipa/n", n);
  std::vector<Scalar> x(k), x_inv(k);
  for (std::size_t j = 0; j < k; ++j) {
    transcript.absorb_element("ipa/L", group, proof.rounds[j].first);
    transcript.absorb_element("ipa/R", group, proof.rounds[j].second);
    x[j] = transcript.challenge_scalar("ipa/x", f);
    x_inv[j] = f.inv(x[j]);
  }

  // Folded generators: g_final = sum s_i g_i, h_final = sum s_i^{-1} h_i, where
  // round j contributes x_j to the upper half at that level and x_j^{-1} to the lower.
  std::vector<Scalar> scalars;
  std::vector<GroupElement> points;
  scalars.reserve(2 * n + 1);
  points.reserve(2 * n + 1);
  const Scalar ab = f.mul(proof.final_a, proof.final_b);
  std::vector<Scalar> s_inv(n);
  for (std::size_t i = 0; i < n; ++i) {
    Scalar s = f.one();
    Scalar si = f.one();
    for (std::size_t j = 0; j < k; ++j) {
      const bool upper = ((i >> (k - 1 - j)) & 1) != 0;
      s = f.mul(s, upper ? x[j] : x_inv[j]);
      si = f.mul(si, upper ? x_inv[j] : x[j]);
    }
    scalars.push_back(f.mul(proof.final_a, s));
    points.push_back(g[i]);
    s_inv[i] = si;
  }
  for (std::size_t i = 0; i < n; ++i) {
    scalars.push_back(f.mul(proof.final_b, s_inv[i]));
    points.push_back(h[i]);
  }
  scalars.push_back(ab);
  points.push_back(u);
  const GroupElement lhs = group.msm(scalars, points);

  GroupElement rhs = group.add(group.add(com_a, com_b), group.mul(z, u));
  for (std::size_t j = 0; j < k; ++j) {
    const Scalar x2 = f.mul(x[j], x[j]);
    const Scalar x2_inv = f.mul(x_inv[j], x_inv[j]);
    rhs = group.add(rhs, group.mul(x2, proof.rounds[j].first));
    rhs = group.add(rhs, group.mul(x2_inv, proof.rounds[j].second));
  }
  return lhs == rhs;
}

}  // namespace rlnc_das
