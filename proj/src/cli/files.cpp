#include <fstream>
#include <iterator>

#include "rlnc_das/cli.hpp"

namespace rlnc_das::cli {

FieldId parse_field_id(std::string_view name) {
  if (name == "test17") return FieldId::Test17;
  if (name == "test257") return FieldId::Test257;
  if (name == "crypto") return FieldId::Crypto;
  fail(ErrorCode::ConfigError, "unknown field '" + std::string(name) + "' (test17|test257|crypto)");
}

std::string_view to_string(FieldId id) {
  switch (id) {
    case FieldId::Test17: return "test17";
    case FieldId::Test257: return "test257";
    case FieldId::Crypto: return "crypto";
  }
  return "unknown";
}

Group group_for(FieldId id) {
  switch (id) {
    case FieldId::Test17: return Group::transparent(Field::make(17));
    case FieldId::Test257: return Group::transparent(Field::make(257));
    case FieldId::Crypto: return Group::ristretto255();
  }
  fail(ErrorCode::MalformedFile, "unknown field id");
}

unsigned chunk_bits(FieldId id) {
  switch (id) {
    case FieldId::Test17: return 4;
    case FieldId::Test257: return 8;
    case FieldId::Crypto: return 64;
  }
  return 0;
}

std::size_t chunk_count(FieldId id, std::size_t data_bytes) {
  const std::size_t bits = chunk_bits(id);
  return (8 * data_bytes + bits - 1) / bits;
}

std::size_t default_columns(FieldId id, std::size_t data_bytes, std::size_t m) {
  require(m >= 1, ErrorCode::ConfigError, "m must be >= 1");
  return std::max<std::size_t>(1, (chunk_count(id, data_bytes) + m - 1) / m);
}

ScalarMatrix pack_data(FieldId id, ByteSpan data, std::size_t m, std::size_t n) {
  const Field f = group_for(id).scalar_field();
  const std::size_t chunks = chunk_count(id, data.size());
  require(chunks <= m * n, ErrorCode::DimensionMismatch,
          std::to_string(data.size()) + " bytes need " + std::to_string(chunks) + " scalars, matrix holds " +
              std::to_string(m * n));
  ScalarMatrix v(f, m, n);
  const unsigned bits = chunk_bits(id);
  for (std::size_t k = 0; k < chunks; ++k) {
    std::uint64_t word = 0;
    for (unsigned b = 0; b < bits; ++b) {
      const std::size_t bit = k * bits + b;
      if (bit / 8 >= data.size()) break;
      word |= static_cast<std::uint64_t>((data[bit / 8] >> (bit % 8)) & 1u) << b;
    }
    v.at(k % m, k / m) = f.from_u64(word);
  }
  return v;
}

Bytes read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  require(static_cast<bool>(in), ErrorCode::IoError, "cannot open " + path.string());
  Bytes bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  require(!in.bad(), ErrorCode::IoError, "read failed: " + path.string());
  return bytes;
}

void write_file(const std::filesystem::path& path, ByteSpan bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  require(static_cast<bool>(out), ErrorCode::IoError, "cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  require(static_cast<bool>(out), ErrorCode::IoError, "write failed: " + path.string());
}

Bytes wrap_file(FileType type, ByteSpan body) {
  ByteWriter w;
  w.put_bytes({reinterpret_cast<const std::uint8_t*>(kMagic.data()), kMagic.size()});
  w.put_u8(kFileVersion);
  w.put_u8(static_cast<std::uint8_t>(type));
  w.put_bytes(body);
  return std::move(w).take();
}

Bytes unwrap_file(ByteSpan file, FileType expected) {
  require(file.size() >= kMagic.size() + 2 &&
              std::equal(kMagic.begin(), kMagic.end(), file.begin(),
                         [](char a, std::uint8_t b) { return static_cast<std::uint8_t>(a) == b; }),
          ErrorCode::MalformedFile, "bad magic");
  require(file[4] == kFileVersion, ErrorCode::MalformedFile, "unsupported file version " + std::to_string(file[4]));
  require(file[5] == static_cast<std::uint8_t>(expected), ErrorCode::MalformedFile,
          "file type " + std::to_string(file[5]) + ", expected " + std::to_string(static_cast<int>(expected)));
  return Bytes(file.begin() + 6, file.end());
}

ProtocolParams CommitmentsFile::params() const {
  return ProtocolParams::make(group_for(field), m, n, p, mode);
}

Bytes CommitmentsFile::encode() const {
  ByteWriter w;
  w.put_u8(static_cast<std::uint8_t>(field));
  w.put_u8(static_cast<std::uint8_t>(mode));
  w.put_u32(m);
  w.put_u32(n);
  w.put_u32(p);
  w.put_u64(data_length);
  w.put_bytes(wire::frame(wire::MessageTag::Commitments, wire::encode_commitments(group_for(field), commitments)));
  return wrap_file(FileType::Commitments, w.bytes());
}

CommitmentsFile CommitmentsFile::decode(ByteSpan file) {
  const Bytes body = unwrap_file(file, FileType::Commitments);
  try {
    ByteReader in(body);
    CommitmentsFile c{};
    const std::uint8_t field = in.get_u8();
    require(field >= 1 && field <= 3, ErrorCode::MalformedFile, "unknown field id");
    c.field = static_cast<FieldId>(field);
    const std::uint8_t mode = in.get_u8();
    require(mode <= 1, ErrorCode::MalformedFile, "unknown sampling mode");
    c.mode = static_cast<SamplingMode>(mode);
    c.m = in.get_u32();
    c.n = in.get_u32();
    c.p = in.get_u32();
    c.data_length = in.get_u64();
    const wire::Frame fr = wire::read_frame(in);
    in.expect_end();
    require(fr.tag == wire::MessageTag::Commitments, ErrorCode::MalformedFile, "expected commitments frame");
    c.commitments = wire::decode_commitments(group_for(c.field), fr.body);
    require(c.commitments.size() == c.m && c.m >= 1 && c.n >= 1 && c.p >= 1, ErrorCode::MalformedFile,
            "commitment header does not match contents");
    return c;
  } catch (const Error& e) {
    if (e.code() == ErrorCode::MalformedFile) throw;
    throw Error(ErrorCode::MalformedFile, e.what());
  }
}

std::vector<wire::Frame> read_frames(ByteSpan body) {
  try {
    ByteReader in(body);
    std::vector<wire::Frame> frames;
    while (!in.empty()) frames.push_back(wire::read_frame(in));
    return frames;
  } catch (const Error& e) {
    throw Error(ErrorCode::MalformedFile, e.what());
  }
}

}  // namespace rlnc_das::cli
