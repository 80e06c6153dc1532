#include "rdpdhg/field_io.hpp"

#include "rdpdhg/error.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <charconv>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>

namespace rdpdhg::io {

namespace {

constexpr std::array<char, 4> kMagic{'R', 'D', 'F', '1'};

std::string format_double(double v)
{
  std::array<char, 32> buf{};
  auto const res = std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::general, 17);
  return std::string(buf.data(), res.ptr);
}

template <typename T>
T to_little(T v)
{
  if constexpr (std::endian::native == std::endian::big) {
    auto bytes = std::bit_cast<std::array<unsigned char, sizeof(T)>>(v);
    std::reverse(bytes.begin(), bytes.end());
    return std::bit_cast<T>(bytes);
  } else {
    return v;
  }
}

template <typename T>
void put(std::ostream &os, T v)
{
  v = to_little(v);
  os.write(reinterpret_cast<char const *>(&v), sizeof(T));
}

template <typename T>
T get(std::istream &is)
{
  T v{};
  is.read(reinterpret_cast<char *>(&v), sizeof(T));
  if (!is) { throw IoError("truncated binary field"); }
  return to_little(v);
}

std::ofstream open_out(std::filesystem::path const &path, std::ios::openmode mode)
{
  std::ofstream os(path, mode);
  if (!os) { throw IoError("cannot open '" + path.string() + "' for writing"); }
  return os;
}

std::ifstream open_in(std::filesystem::path const &path, std::ios::openmode mode)
{
  std::ifstream is(path, mode);
  if (!is) { throw IoError("cannot open '" + path.string() + "' for reading"); }
  return is;
}

} // namespace

void write_csv(std::ostream &os, Field const &f)
{
  int const n = f.spec().n();
  std::string line;
  for (int i = 0; i < n; ++i) {
    line.clear();
    for (int j = 0; j < n; ++j) {
      if (j > 0) { line += ','; }
      line += format_double(f(i, j));
    }
    line += '\n';
    os << line;
  }
  if (!os) { throw IoError("failed writing CSV field"); }
}

void write_csv(std::filesystem::path const &path, Field const &f)
{
  auto os = open_out(path, std::ios::out | std::ios::trunc);
  write_csv(os, f);
}

Field read_csv(std::istream &is, GridSpec const &spec)
{
  Field out(spec);
  int const n = spec.n();
  std::string line;
  for (int i = 0; i < n; ++i) {
    if (!std::getline(is, line)) { throw IoError("CSV field has fewer than " + std::to_string(n) + " rows"); }
    char const *p = line.data();
    char const *end = line.data() + line.size();
    for (int j = 0; j < n; ++j) {
      double v = 0.0;
      auto const res = std::from_chars(p, end, v);
      if (res.ec != std::errc{}) {
        throw IoError("bad CSV value at row " + std::to_string(i) + ", column " + std::to_string(j));
      }
      out(i, j) = v;
      p = res.ptr;
      if (j + 1 < n) {
        if (p == end || *p != ',') { throw IoError("CSV row " + std::to_string(i) + " has too few columns"); }
        ++p;
      }
    }
    while (p != end && (*p == '\r' || *p == ' ')) { ++p; }
    if (p != end) { throw IoError("CSV row " + std::to_string(i) + " has too many columns"); }
  }
  return out;
}

Field read_csv(std::filesystem::path const &path, GridSpec const &spec)
{
  auto is = open_in(path, std::ios::in);
  return read_csv(is, spec);
}

void write_binary(std::ostream &os, SystemField const &f)
{
  os.write(kMagic.data(), kMagic.size());
  put<std::uint32_t>(os, static_cast<std::uint32_t>(f.spec().n()));
  put<std::uint32_t>(os, static_cast<std::uint32_t>(f.n_components()));
  put<std::uint32_t>(os, 0U);
  for (auto const &c : f.components()) {
    for (double v : c.values()) { put<double>(os, v); }
  }
  if (!os) { throw IoError("failed writing binary field"); }
}

void write_binary(std::filesystem::path const &path, SystemField const &f)
{
  auto os = open_out(path, std::ios::out | std::ios::trunc | std::ios::binary);
  write_binary(os, f);
}

SystemField read_binary(std::istream &is, GridSpec const &spec)
{
  std::array<char, 4> magic{};
  is.read(magic.data(), magic.size());
  if (!is || magic != kMagic) { throw IoError("not an RDF1 binary field"); }
  auto const n = get<std::uint32_t>(is);
  auto const components = get<std::uint32_t>(is);
  (void)get<std::uint32_t>(is);
  if (n != static_cast<std::uint32_t>(spec.n())) {
    throw IoError("binary field has n_x=" + std::to_string(n) + ", expected " + std::to_string(spec.n()));
  }
  if (components == 0 || components > 16) { throw IoError("implausible component count in binary field"); }
  std::vector<Field> fields;
  for (std::uint32_t c = 0; c < components; ++c) {
    Field f(spec);
    for (auto &v : f.values()) { v = get<double>(is); }
    fields.push_back(std::move(f));
  }
  return SystemField(std::move(fields));
}

SystemField read_binary(std::filesystem::path const &path, GridSpec const &spec)
{
  auto is = open_in(path, std::ios::in | std::ios::binary);
  return read_binary(is, spec);
}

} // namespace rdpdhg::io
