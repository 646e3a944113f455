#pragma once

#include <cstddef>
#include <vector>

#include "rlnc_das/field.hpp"

namespace rlnc_das {

/// A coefficient vector c (length n) with its coded vector omega = V c (length m).
struct CodedSample {
  ScalarVector coeffs;
  ScalarVector payload;

  void encode(ByteWriter& out) const;
  static CodedSample decode(const Field& f, ByteReader& in);

  friend bool operator==(const CodedSample&, const CodedSample&) = default;
};

/// Sampling by coding: the linear combination V c of the data columns.
ScalarVector rlnc_encode(const ScalarMatrix& data, const ScalarVector& coeffs);

struct DecoderAddResult {
  bool rank_increased = false;
  std::size_t new_rank = 0;
  /// False when the sample was dependent and its payload contradicted the
  /// payload implied by already accepted samples.
  bool consistent = true;
};

/// Streaming Gauss-Jordan decoder for m x n data.
///
/// Accepted samples are kept in reduced row-echelon form over the
/// coefficients (pivot entries normalized to one), so once the rank reaches
/// n each stored payload is exactly the data column at its pivot.
class RlncDecoder {
 public:
  RlncDecoder(Field field, std::size_t rows, std::size_t cols);

  DecoderAddResult add(const CodedSample& sample);

  std::size_t rank() const { return stored_.size(); }
  std::size_t cols() const { return cols_; }
  std::size_t rows() const { return rows_; }
  bool decodable() const { return rank() == cols_; }
  bool saw_inconsistency() const { return inconsistent_; }

  /// Throws InsufficientRank while rank < n and InconsistentSamples if any
  /// dependent sample contradicted the stored ones.
  ScalarMatrix reconstruct() const;

 private:
  struct Row {
    std::size_t pivot;
    std::vector<Scalar> coeffs;
    std::vector<Scalar> payload;
  };

  Field field_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Row> stored_;
  bool inconsistent_ = false;
};

}  // namespace rlnc_das
