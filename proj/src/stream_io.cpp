#include "tfd/stream_io.hpp"

#include <bit>
#include <cstring>
#include <limits>

#include "tfd/errors.hpp"

namespace tfd {

namespace {

void put_le(std::vector<unsigned char>& out, std::uint64_t v, int bytes) {
  for (int b = 0; b < bytes; ++b) out.push_back(static_cast<unsigned char>((v >> (8 * b)) & 0xffu));
}

std::uint64_t get_le(const unsigned char* p, int bytes) {
  std::uint64_t v = 0;
  for (int b = 0; b < bytes; ++b) v |= static_cast<std::uint64_t>(p[b]) << (8 * b);
  return v;
}

void read_exact(std::istream& in, unsigned char* dst, std::size_t n, const char* what) {
  in.read(reinterpret_cast<char*>(dst), static_cast<std::streamsize>(n));
  if (static_cast<std::size_t>(in.gcount()) != n) throw FormatError(std::string("stream truncated in ") + what);
}

void decode_doubles(const unsigned char* src, std::span<double> out) {
  if constexpr (std::endian::native == std::endian::little) {
    std::memcpy(out.data(), src, out.size() * sizeof(double));
  } else {
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::bit_cast<double>(get_le(src + 8 * i, 8));
  }
}

void encode_doubles(std::span<const double> in, std::vector<unsigned char>& out) {
  out.resize(in.size() * sizeof(double));
  if constexpr (std::endian::native == std::endian::little) {
    std::memcpy(out.data(), in.data(), out.size());
  } else {
    for (std::size_t i = 0; i < in.size(); ++i) {
      const auto v = std::bit_cast<std::uint64_t>(in[i]);
      for (int b = 0; b < 8; ++b) out[8 * i + b] = static_cast<unsigned char>((v >> (8 * b)) & 0xffu);
    }
  }
}

// Product of dims times 8 bytes, or an error on 64-bit overflow.
std::uint64_t payload_bytes(const std::vector<Index>& dims) {
  std::uint64_t n = 8;
  for (Index d : dims) {
    if (d != 0 && n > std::numeric_limits<std::uint64_t>::max() / d) throw FormatError("stream dims overflow");
    n *= d;
  }
  return n;
}

void validate(const StreamHeader& h) {
  if (h.dims.size() < 2) throw FormatError("stream order must be at least 2");
  for (std::size_t m = 1; m < h.dims.size(); ++m) {
    if (h.dims[m] == 0) throw FormatError("stream dims after the first must be positive");
  }
  payload_bytes(h.dims);
}

}  // namespace

Index StreamHeader::slice_size() const { return product(std::span<const Index>(dims).subspan(1)); }

std::vector<unsigned char> StreamHeader::encode() const {
  std::vector<unsigned char> out(kMagic, kMagic + 8);
  put_le(out, version, 4);
  put_le(out, dims.size(), 4);
  for (Index d : dims) put_le(out, d, 8);
  put_le(out, scalar_kind, 4);
  return out;
}

StreamHeader read_header(std::istream& in) {
  unsigned char buf[8];
  read_exact(in, buf, 8, "magic");
  if (std::memcmp(buf, StreamHeader::kMagic, 8) != 0) throw FormatError("bad magic: not a tensor stream file");
  StreamHeader h;
  read_exact(in, buf, 4, "version");
  h.version = static_cast<std::uint32_t>(get_le(buf, 4));
  if (h.version != StreamHeader::kVersion) throw FormatError("unsupported stream version " + std::to_string(h.version));
  read_exact(in, buf, 4, "order");
  const auto p = static_cast<std::uint32_t>(get_le(buf, 4));
  if (p < 2 || p > 64) throw FormatError("stream order " + std::to_string(p) + " out of range");
  for (std::uint32_t m = 0; m < p; ++m) {
    read_exact(in, buf, 8, "dims");
    const std::uint64_t d = get_le(buf, 8);
    if (d > std::numeric_limits<Index>::max()) throw FormatError("stream dims overflow");
    h.dims.push_back(static_cast<Index>(d));
  }
  read_exact(in, buf, 4, "scalar kind");
  h.scalar_kind = static_cast<std::uint32_t>(get_le(buf, 4));
  if (h.scalar_kind != StreamHeader::kFloat64) {
    throw FormatError("unsupported scalar kind " + std::to_string(h.scalar_kind));
  }
  validate(h);
  return h;
}

StreamReader::StreamReader(const std::string& path) : path_(path), in_(path, std::ios::binary) {
  if (!in_) throw FormatError("cannot open stream file '" + path + "'");
  header_ = read_header(in_);
  payload_offset_ = in_.tellg();
  in_.seekg(0, std::ios::end);
  const auto available = static_cast<std::uint64_t>(in_.tellg() - payload_offset_);
  const std::uint64_t expected = payload_bytes(header_.dims);
  if (available < expected) {
    throw FormatError("stream '" + path + "' truncated: payload has " + std::to_string(available) + " bytes, expected " +
                      std::to_string(expected));
  }
  if (available > expected) throw FormatError("stream '" + path + "' has trailing bytes after the payload");
  in_.seekg(payload_offset_);
  bytes_.resize(header_.slice_size() * sizeof(double));
}

bool StreamReader::next(std::span<double> out) {
  if (pos_ >= header_.dims[0]) return false;
  if (out.size() != header_.slice_size()) throw DimensionError("StreamReader::next: output buffer has the wrong size");
  read_exact(in_, bytes_.data(), bytes_.size(), "payload");
  decode_doubles(bytes_.data(), out);
  ++pos_;
  return true;
}

void StreamReader::rewind() {
  in_.clear();
  in_.seekg(payload_offset_);
  pos_ = 0;
}

StreamWriter::StreamWriter(const std::string& path, std::vector<Index> dims)
    : path_(path), out_(path, std::ios::binary | std::ios::trunc) {
  if (!out_) throw FormatError("cannot create stream file '" + path + "'");
  header_.dims = std::move(dims);
  validate(header_);
  const auto h = header_.encode();
  out_.write(reinterpret_cast<const char*>(h.data()), static_cast<std::streamsize>(h.size()));
}

StreamWriter::~StreamWriter() {
  if (!closed_) {
    try {
      close();
    } catch (...) {
    }
  }
}

void StreamWriter::write_slice(std::span<const double> slice) {
  if (slice.size() != header_.slice_size()) throw DimensionError("StreamWriter: slice has the wrong size");
  if (written_ >= header_.dims[0]) throw DimensionError("StreamWriter: more slices than dims[0]");
  encode_doubles(slice, bytes_);
  out_.write(reinterpret_cast<const char*>(bytes_.data()), static_cast<std::streamsize>(bytes_.size()));
  ++written_;
}

void StreamWriter::close() {
  if (closed_) return;
  closed_ = true;
  out_.close();
  if (!out_) throw FormatError("write to '" + path_ + "' failed");
  if (written_ != header_.dims[0]) {
    throw FormatError("StreamWriter: wrote " + std::to_string(written_) + " slices, header declares " +
                      std::to_string(header_.dims[0]));
  }
}

void write_tensor(const std::string& path, const DenseTensor& t) {
  StreamWriter w(path, t.dims());
  for (Index i = 0; i < t.n1(); ++i) w.write_slice(t.horizontal(i));
  w.close();
}

DenseTensor read_tensor(const std::string& path) {
  StreamReader r(path);
  return collect(r);
}

}  // namespace tfd
