#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "rlnc_das/bytes.hpp"
#include "rlnc_das/protocol.hpp"
#include "rlnc_das/wire.hpp"

namespace rlnc_das::cli {

/// Exit codes: 0 ok / available, 1 unavailable or out-of-band simulation,
/// 2 usage or runtime error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// ---------------------------------------------------------------------------
// Files: "RDAS", u8 version, u8 type, then a type-specific body made of
// protocol frames.

inline constexpr std::string_view kMagic = "RDAS";
inline constexpr std::uint8_t kFileVersion = 1;

enum class FileType : std::uint8_t {
  Commitments = 1,
  Challenge = 2,
  Response = 3,
  Projections = 4,
  Proof = 5,
};

enum class FieldId : std::uint8_t { Test17 = 1, Test257 = 2, Crypto = 3 };

FieldId parse_field_id(std::string_view name);  // ConfigError
std::string_view to_string(FieldId id);
Group group_for(FieldId id);

/// Bits of input packed into one scalar: 64 for the crypto field,
/// bit_length(q) - 1 for the small test fields.
unsigned chunk_bits(FieldId id);
/// Number of scalars the data occupies.
std::size_t chunk_count(FieldId id, std::size_t data_bytes);
/// max(1, ceil(chunks / m)).
std::size_t default_columns(FieldId id, std::size_t data_bytes, std::size_t m);
/// Chunk k goes to row k % m, column k / m; the rest is zero padding.
/// Throws DimensionMismatch if the data does not fit.
ScalarMatrix pack_data(FieldId id, ByteSpan data, std::size_t m, std::size_t n);

Bytes read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, ByteSpan bytes);

Bytes wrap_file(FileType type, ByteSpan body);
/// Checks magic, version and type; throws MalformedFile on mismatch.
Bytes unwrap_file(ByteSpan file, FileType expected);

struct CommitmentsFile {
  FieldId field;
  SamplingMode mode;
  std::uint32_t m;
  std::uint32_t n;
  std::uint32_t p;
  std::uint64_t data_length;
  RowCommitments commitments;

  ProtocolParams params() const;
  Bytes encode() const;
  static CommitmentsFile decode(ByteSpan file);
};

/// Frames of a message file body, in order; throws MalformedFile.
std::vector<wire::Frame> read_frames(ByteSpan body);

}  // namespace rlnc_das::cli
