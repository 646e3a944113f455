#include "rlnc_das/rlnc.hpp"

#include <algorithm>

namespace rlnc_das {

void CodedSample::encode(ByteWriter& out) const {
  coeffs.encode(out);
  payload.encode(out);
}

CodedSample CodedSample::decode(const Field& f, ByteReader& in) {
  ScalarVector c = ScalarVector::decode(f, in);
  ScalarVector w = ScalarVector::decode(f, in);
  return {std::move(c), std::move(w)};
}

ScalarVector rlnc_encode(const ScalarMatrix& data, const ScalarVector& coeffs) {
  return mat_vec_mul(data, coeffs);
}

RlncDecoder::RlncDecoder(Field field, std::size_t rows, std::size_t cols)
    : field_(field), rows_(rows), cols_(cols) {}

DecoderAddResult RlncDecoder::add(const CodedSample& sample) {
  require(sample.coeffs.field == field_ && sample.payload.field == field_, ErrorCode::FieldMismatch,
          "sample over a different field");
  require(sample.coeffs.size() == cols_, ErrorCode::DimensionMismatch,
          "coefficient length " + std::to_string(sample.coeffs.size()) + ", decoder expects " +
              std::to_string(cols_));
  require(sample.payload.size() == rows_, ErrorCode::DimensionMismatch,
          "payload length " + std::to_string(sample.payload.size()) + ", decoder expects " +
              std::to_string(rows_));
  const Field& f = field_;
  std::vector<Scalar> c = sample.coeffs.entries;
  std::vector<Scalar> w = sample.payload.entries;

  for (const Row& row : stored_) {
    const Scalar factor = c[row.pivot];
    if (factor.is_zero()) continue;
    for (std::size_t i = 0; i < cols_; ++i) c[i] = f.sub(c[i], f.mul(factor, row.coeffs[i]));
    for (std::size_t i = 0; i < rows_; ++i) w[i] = f.sub(w[i], f.mul(factor, row.payload[i]));
  }

  const auto pivot_it = std::find_if(c.begin(), c.end(), [](const Scalar& s) { return !s.is_zero(); });
  if (pivot_it == c.end()) {
    const bool consistent = std::all_of(w.begin(), w.end(), [](const Scalar& s) { return s.is_zero(); });
    if (!consistent) inconsistent_ = true;
    return {false, rank(), consistent};
  }

  const std::size_t pivot = static_cast<std::size_t>(pivot_it - c.begin());
  const Scalar inv = f.inv(c[pivot]);
  for (auto& s : c) s = f.mul(inv, s);
  for (auto& s : w) s = f.mul(inv, s);

  // Clear the new pivot column from earlier rows to stay in reduced form.
  for (Row& row : stored_) {
    const Scalar factor = row.coeffs[pivot];
    if (factor.is_zero()) continue;
    for (std::size_t i = 0; i < cols_; ++i) row.coeffs[i] = f.sub(row.coeffs[i], f.mul(factor, c[i]));
    for (std::size_t i = 0; i < rows_; ++i) row.payload[i] = f.sub(row.payload[i], f.mul(factor, w[i]));
  }
  stored_.push_back({pivot, std::move(c), std::move(w)});
  return {true, rank(), true};
}

ScalarMatrix RlncDecoder::reconstruct() const {
  require(!inconsistent_, ErrorCode::InconsistentSamples, "stored payloads contradict each other");
  require(decodable(), ErrorCode::InsufficientRank,
          "rank " + std::to_string(rank()) + " of " + std::to_string(cols_));
  ScalarMatrix data(field_, rows_, cols_);
  for (const Row& row : stored_)
    for (std::size_t r = 0; r < rows_; ++r) data.at(r, row.pivot) = row.payload[r];
  return data;
}

}  // namespace rlnc_das
