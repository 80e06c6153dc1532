#pragma once

#include "rdpdhg/grid.hpp"

#include <filesystem>
#include <iosfwd>

namespace rdpdhg::io {

/// CSV: N lines of N comma-separated values, row i = grid row i. Values are
/// written with 17 significant digits so a read returns the same doubles.
void write_csv(std::ostream &os, Field const &f);
void write_csv(std::filesystem::path const &path, Field const &f);
Field read_csv(std::istream &is, GridSpec const &spec);
Field read_csv(std::filesystem::path const &path, GridSpec const &spec);

/// Binary snapshot layout (little-endian):
///   bytes 0..3   magic "RDF1"
///   bytes 4..7   u32 n_x
///   bytes 8..11  u32 component count
///   bytes 12..15 reserved, zero
/// followed by component-major, row-major float64 values.
inline constexpr std::size_t kBinaryHeaderBytes = 16;

void write_binary(std::ostream &os, SystemField const &f);
void write_binary(std::filesystem::path const &path, SystemField const &f);
SystemField read_binary(std::istream &is, GridSpec const &spec);
SystemField read_binary(std::filesystem::path const &path, GridSpec const &spec);

} // namespace rdpdhg::io
