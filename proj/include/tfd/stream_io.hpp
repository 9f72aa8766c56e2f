#pragma once

#include <cstdint>
#include <fstream>
#include <span>
#include <string>
#include <vector>

#include "tfd/slice_source.hpp"
#include "tfd/tensor.hpp"

namespace tfd {

// Binary tensor stream, all integers little-endian:
//   8 bytes   magic "TSKETCH1"
//   u32       version (1)
//   u32       p, the tensor order
//   p x u64   dims n1 .. np
//   u32       scalar kind (0 = IEEE-754 binary64, little-endian)
//   payload   n1 * ... * np doubles, horizontal slice after horizontal slice;
//             inside a slice i2 runs fastest, then i3, ..., ip.
// n1 may be 0 (an empty stream); every other dim must be positive.
struct StreamHeader {
  static constexpr char kMagic[8] = {'T', 'S', 'K', 'E', 'T', 'C', 'H', '1'};
  static constexpr std::uint32_t kVersion = 1;
  static constexpr std::uint32_t kFloat64 = 0;

  std::uint32_t version = kVersion;
  std::vector<Index> dims;
  std::uint32_t scalar_kind = kFloat64;

  std::size_t encoded_size() const { return 8 + 4 + 4 + 8 * dims.size() + 4; }
  /// Entries per horizontal slice (n2 * ... * np).
  Index slice_size() const;
  std::vector<unsigned char> encode() const;
};

/// Parses and validates a header. Throws FormatError on bad magic, version,
/// scalar kind, order < 2, zero trailing dims, or a payload size that
/// overflows 64 bits.
StreamHeader read_header(std::istream& in);

/// Sequential reader over a stream file; rewindable.
class StreamReader final : public SliceSource {
 public:
  explicit StreamReader(const std::string& path);

  const std::vector<Index>& dims() const override { return header_.dims; }
  bool next(std::span<double> out) override;
  bool rewindable() const override { return true; }
  void rewind() override;

  const StreamHeader& header() const noexcept { return header_; }

 private:
  std::string path_;
  std::ifstream in_;
  StreamHeader header_;
  std::streamoff payload_offset_ = 0;
  Index pos_ = 0;
  std::vector<unsigned char> bytes_;
};

/// Writes a stream slice by slice. close() (or the destructor) verifies that
/// exactly n1 slices were written.
class StreamWriter {
 public:
  StreamWriter(const std::string& path, std::vector<Index> dims);
  ~StreamWriter();
  StreamWriter(const StreamWriter&) = delete;
  StreamWriter& operator=(const StreamWriter&) = delete;

  void write_slice(std::span<const double> slice);
  void close();

 private:
  std::string path_;
  std::ofstream out_;
  StreamHeader header_;
  Index written_ = 0;
  bool closed_ = false;
  std::vector<unsigned char> bytes_;
};

void write_tensor(const std::string& path, const DenseTensor& t);
DenseTensor read_tensor(const std::string& path);

}  // namespace tfd
