#ifndef PHASECALC_IO_HPP
#define PHASECALC_IO_HPP

#include <filesystem>
#include <optional>
#include <string>

#include "phasecalc/grid.hpp"

namespace phasecalc {

/// Metadata stored in the JSON sidecar of a binary dump.
struct DumpMeta {
  int n = 0;             // grid points per axis
  int dim = 1;           // d
  double spacing = 0.0;  // h
  std::optional<double> A;  // quantization parameter, absent for plain data
  std::string kind;      // "symbol", "matrix", ...
};

struct Dump {
  Matrix values;
  DumpMeta meta;
};

/// Writes `stem.bin` (row-major complex64, little-endian, real part first)
/// and `stem.json` holding shape, grid, A, dtype and byte_order.
void write_dump(const std::filesystem::path& stem, const Matrix& values, const DumpMeta& meta);

/// Reads a dump written by write_dump. Values round to single precision.
Dump read_dump(const std::filesystem::path& stem);

DumpMeta dump_meta(const PhaseGrid& grid, std::optional<double> A, std::string kind);

}  // namespace phasecalc

#endif  // PHASECALC_IO_HPP
