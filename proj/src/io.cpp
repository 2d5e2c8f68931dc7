#include "phasecalc/io.hpp"

#include <bit>
#include <cstdint>
#include <fstream>
#include <vector>

#include "json.hpp"

namespace phasecalc {

namespace {

std::filesystem::path with_ext(std::filesystem::path stem, const char* ext) {
  stem += ext;
  return stem;
}

void put_le(std::vector<unsigned char>& out, float v) {
  const auto u = std::bit_cast<std::uint32_t>(v);
  for (int b = 0; b < 4; ++b) out.push_back(static_cast<unsigned char>(u >> (8 * b)));
}

float get_le(const unsigned char* p) {
  std::uint32_t u = 0;
  for (int b = 0; b < 4; ++b) u |= std::uint32_t(p[b]) << (8 * b);
  return std::bit_cast<float>(u);
}

}  // namespace

DumpMeta dump_meta(const PhaseGrid& grid, std::optional<double> A, std::string kind) {
  return DumpMeta{grid.n(), grid.dim(), grid.h(), A, std::move(kind)};
}

void write_dump(const std::filesystem::path& stem, const Matrix& values, const DumpMeta& meta) {
  std::vector<unsigned char> bytes;
  bytes.reserve(static_cast<std::size_t>(values.size()) * 8);
  for (Index i = 0; i < values.rows(); ++i)
    for (Index j = 0; j < values.cols(); ++j) {
      put_le(bytes, static_cast<float>(values(i, j).real()));
      put_le(bytes, static_cast<float>(values(i, j).imag()));
    }
  std::ofstream bin(with_ext(stem, ".bin"), std::ios::binary);
  if (!bin) throw std::runtime_error("cannot open " + with_ext(stem, ".bin").string());
  bin.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));

  nlohmann::ordered_json side;
  side["shape"] = {values.rows(), values.cols()};
  side["dtype"] = "complex64";
  side["byte_order"] = "little";
  side["layout"] = "row-major";
  side["kind"] = meta.kind;
  side["grid"] = {{"N", meta.n}, {"d", meta.dim}, {"h", meta.spacing}};
  side["A"] = meta.A ? nlohmann::ordered_json(*meta.A) : nlohmann::ordered_json(nullptr);
  std::ofstream js(with_ext(stem, ".json"));
  if (!js) throw std::runtime_error("cannot open " + with_ext(stem, ".json").string());
  js << side.dump(2) << '\n';
}

Dump read_dump(const std::filesystem::path& stem) {
  std::ifstream js(with_ext(stem, ".json"));
  if (!js) throw std::runtime_error("cannot open " + with_ext(stem, ".json").string());
  const auto side = nlohmann::json::parse(js);
  if (side.at("dtype") != "complex64" || side.at("byte_order") != "little")
    throw std::runtime_error("unsupported dump encoding in " + with_ext(stem, ".json").string());
  const Index rows = side.at("shape").at(0), cols = side.at("shape").at(1);

  std::ifstream bin(with_ext(stem, ".bin"), std::ios::binary);
  std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(bin)), std::istreambuf_iterator<char>());
  if (bytes.size() != static_cast<std::size_t>(rows * cols * 8))
    throw std::runtime_error("dump size does not match shape in " + with_ext(stem, ".bin").string());

  Dump d;
  d.values.resize(rows, cols);
  const unsigned char* p = bytes.data();
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j, p += 8) d.values(i, j) = Complex(get_le(p), get_le(p + 4));
  d.meta.n = side.at("grid").at("N");
  d.meta.dim = side.at("grid").at("d");
  d.meta.spacing = side.at("grid").at("h");
  if (!side.at("A").is_null()) d.meta.A = side.at("A").get<double>();
  d.meta.kind = side.at("kind");
  return d;
}

}  // namespace phasecalc
