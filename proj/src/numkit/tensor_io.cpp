#include "mvgcn/numkit/tensor_io.hpp"

#include <cstring>
#include <fstream>
#include <stdexcept>

namespace mvgcn::numkit {

namespace {

constexpr char kMagic[4] = {'D', 'T', 'N', '1'};

// The on-disk layout is little-endian; this codebase targets little-endian
// hosts and round-trips are byte-exact there.
template <typename T>
void write_raw(std::ostream& out, T v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T read_raw(std::istream& in, const char* what) {
  T v{};
  in.read(reinterpret_cast<char*>(&v), sizeof(T));
  if (!in) throw std::runtime_error(std::string("dtn1: truncated file reading ") + what);
  return v;
}

}  // namespace

void write_dtn1(std::ostream& out, const Tensor& t) {
  out.write(kMagic, 4);
  write_raw<std::uint32_t>(out, static_cast<std::uint32_t>(t.rank()));
  for (auto d : t.dims) write_raw<std::uint64_t>(out, static_cast<std::uint64_t>(d));
  out.write(reinterpret_cast<const char*>(t.data.data()),
            static_cast<std::streamsize>(t.data.size() * sizeof(double)));
  if (!out) throw std::runtime_error("dtn1: write failed");
}

void write_dtn1_file(const std::string& path, const Tensor& t) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("dtn1: cannot open for write: " + path);
  write_dtn1(out, t);
}

Tensor read_dtn1(std::istream& in) {
  char magic[4];
  in.read(magic, 4);
  if (!in || std::memcmp(magic, kMagic, 4) != 0)
    throw std::runtime_error("dtn1: bad magic bytes");
  const auto rank = read_raw<std::uint32_t>(in, "rank");
  if (rank > 8) throw std::runtime_error("dtn1: implausible rank");
  std::vector<std::int64_t> dims;
  std::int64_t numel = 1;
  for (std::uint32_t i = 0; i < rank; ++i) {
    const auto d = read_raw<std::uint64_t>(in, "extent");
    dims.push_back(static_cast<std::int64_t>(d));
    numel *= static_cast<std::int64_t>(d);
  }
  std::vector<double> data(static_cast<std::size_t>(numel));
  in.read(reinterpret_cast<char*>(data.data()),
          static_cast<std::streamsize>(data.size() * sizeof(double)));
  if (!in) throw std::runtime_error("dtn1: truncated payload");
  return Tensor(std::move(dims), std::move(data));
}

Tensor read_dtn1_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("dtn1: cannot open for read: " + path);
  return read_dtn1(in);
}

}  // namespace mvgcn::numkit
