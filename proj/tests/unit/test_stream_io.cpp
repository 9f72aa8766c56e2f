#include <cstdio>
#include <filesystem>
#include <fstream>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "tfd/errors.hpp"
#include "tfd/stream_io.hpp"
#include "tfd/tensor_ops.hpp"

using namespace tfd;
namespace fs = std::filesystem;

namespace {

class TempFile {
 public:
  explicit TempFile(const std::string& name) : path_((fs::temp_directory_path() / ("tfd_io_" + name)).string()) {}
  ~TempFile() { std::remove(path_.c_str()); }
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

std::vector<unsigned char> slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void dump(const std::string& path, const std::vector<unsigned char>& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
}

}  // namespace

TEST(StreamIo, RoundTrip) {
  TempFile f("roundtrip.bin");
  const DenseTensor a = oracle::random_tensor({7, 3, 4, 2}, 1);
  write_tensor(f.path(), a);
  EXPECT_EQ(fs::file_size(f.path()), 8 + 4 + 4 + 4 * 8 + 4 + a.size() * 8);
  const DenseTensor b = read_tensor(f.path());
  EXPECT_EQ(b.dims(), a.dims());
  EXPECT_EQ(fro_norm(subtract(a, b)), 0.0);
}

TEST(StreamIo, HeaderBytes) {
  TempFile f("header.bin");
  DenseTensor a({1, 1, 2});
  a(0, 0, 0) = 1.0;
  write_tensor(f.path(), a);
  const auto bytes = slurp(f.path());
  const std::vector<unsigned char> want{'T', 'S', 'K', 'E', 'T', 'C', 'H', '1',  // magic
                                        1, 0, 0, 0,                              // version
                                        3, 0, 0, 0,                              // p
                                        1, 0, 0, 0, 0, 0, 0, 0,                  // n1
                                        1, 0, 0, 0, 0, 0, 0, 0,                  // n2
                                        2, 0, 0, 0, 0, 0, 0, 0,                  // n3
                                        0, 0, 0, 0,                              // float64
                                        0, 0, 0, 0, 0, 0, 0xf0, 0x3f,            // 1.0
                                        0, 0, 0, 0, 0, 0, 0, 0};
  EXPECT_EQ(bytes, want);
}

TEST(StreamIo, EmptyStream) {
  TempFile f("empty.bin");
  { StreamWriter w(f.path(), {0, 3, 2}); }
  StreamReader r(f.path());
  EXPECT_EQ(r.dims(), (std::vector<Index>{0, 3, 2}));
  std::vector<double> buf(6);
  EXPECT_FALSE(r.next(buf));
}

TEST(StreamIo, SequentialAndRewind) {
  TempFile f("rewind.bin");
  const DenseTensor a = oracle::random_tensor({4, 2, 3}, 2);
  write_tensor(f.path(), a);
  StreamReader r(f.path());
  EXPECT_TRUE(r.rewindable());
  std::vector<double> buf(6);
  for (int pass = 0; pass < 2; ++pass) {
    for (Index i = 0; i < 4; ++i) {
      ASSERT_TRUE(r.next(buf));
      for (Index j = 0; j < 6; ++j) EXPECT_EQ(buf[j], a.horizontal(i)[j]);
    }
    EXPECT_FALSE(r.next(buf));
    r.rewind();
  }
}

TEST(StreamIo, TruncatedPayload) {
  TempFile f("trunc.bin");
  write_tensor(f.path(), oracle::random_tensor({5, 2, 2}, 3));
  auto bytes = slurp(f.path());
  bytes.resize(bytes.size() - 3);
  dump(f.path(), bytes);
  EXPECT_THROW(StreamReader{f.path()}, FormatError);
}

TEST(StreamIo, TruncatedHeader) {
  TempFile f("trunc_header.bin");
  write_tensor(f.path(), oracle::random_tensor({5, 2, 2}, 3));
  auto bytes = slurp(f.path());
  bytes.resize(20);
  dump(f.path(), bytes);
  EXPECT_THROW(StreamReader{f.path()}, FormatError);
}

TEST(StreamIo, TrailingBytes) {
  TempFile f("trailing.bin");
  write_tensor(f.path(), oracle::random_tensor({2, 2, 2}, 4));
  auto bytes = slurp(f.path());
  bytes.push_back(0);
  dump(f.path(), bytes);
  EXPECT_THROW(StreamReader{f.path()}, FormatError);
}

TEST(StreamIo, BadMagicAndVersion) {
  TempFile f("magic.bin");
  write_tensor(f.path(), oracle::random_tensor({2, 2, 2}, 5));
  auto bytes = slurp(f.path());
  auto bad = bytes;
  bad[0] = 'X';
  dump(f.path(), bad);
  EXPECT_THROW(StreamReader{f.path()}, FormatError);
  bad = bytes;
  bad[8] = 2;
  dump(f.path(), bad);
  EXPECT_THROW(StreamReader{f.path()}, FormatError);
  bad = bytes;
  bad[bytes.size() - 8 * 8 - 4] = 1;  // scalar kind
  dump(f.path(), bad);
  EXPECT_THROW(StreamReader{f.path()}, FormatError);
}

TEST(StreamIo, DimsOverflow) {
  TempFile f("overflow.bin");
  StreamHeader h;
  h.dims = {1ULL << 40, 1ULL << 30, 2};
  dump(f.path(), h.encode());
  EXPECT_THROW(StreamReader{f.path()}, FormatError);
}

TEST(StreamIo, MissingFile) { EXPECT_THROW(StreamReader{"/nonexistent/tfd_missing.bin"}, FormatError); }

TEST(StreamIo, WriterCountsSlices) {
  TempFile f("count.bin");
  StreamWriter w(f.path(), {2, 2, 1});
  const std::vector<double> s{1.0, 2.0};
  w.write_slice(s);
  EXPECT_THROW(w.close(), FormatError);
  StreamWriter w2(f.path(), {1, 2, 1});
  w2.write_slice(s);
  EXPECT_THROW(w2.write_slice(s), DimensionError);
  EXPECT_THROW(w2.write_slice(std::vector<double>{1.0}), DimensionError);
}
