#include "phasecalc/svg.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>

#include <boost/archive/iterators/base64_from_binary.hpp>
#include <boost/archive/iterators/transform_width.hpp>
#include <png.h>

namespace phasecalc {

namespace {

// Anchors of a perceptually ordered dark-blue to yellow ramp.
constexpr std::array<std::array<int, 3>, 5> kAnchors{{
    {68, 1, 84}, {59, 82, 139}, {33, 145, 140}, {94, 201, 98}, {253, 231, 37}}};

std::array<unsigned char, 3> palette_color(int index) {
  const double t = index / 255.0 * (kAnchors.size() - 1);
  const int k = std::min(static_cast<int>(t), static_cast<int>(kAnchors.size()) - 2);
  const double u = t - k;
  std::array<unsigned char, 3> c{};
  for (int ch = 0; ch < 3; ++ch)
    c[ch] = static_cast<unsigned char>(std::lround((1 - u) * kAnchors[k][ch] + u * kAnchors[k + 1][ch]));
  return c;
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string base64(const std::vector<unsigned char>& bytes) {
  using namespace boost::archive::iterators;
  using It = base64_from_binary<transform_width<std::vector<unsigned char>::const_iterator, 6, 8>>;
  std::string out(It(bytes.begin()), It(bytes.end()));
  out.append((3 - bytes.size() % 3) % 3, '=');
  return out;
}

void png_append(png_structp png, png_bytep data, png_size_t len) {
  auto* out = static_cast<std::vector<unsigned char>*>(png_get_io_ptr(png));
  out->insert(out->end(), data, data + len);
}

// Up to `count` evenly spaced indices in [0, n), always including 0.
std::vector<int> tick_indices(int n, int count) {
  std::vector<int> t;
  const int step = std::max(1, n / count);
  for (int k = 0; k < n; k += step) t.push_back(k);
  return t;
}

}  // namespace

HeatmapAxes phase_axes(const Grid1D& g, std::string title) {
  HeatmapAxes a;
  a.title = std::move(title);
  a.x0 = a.y0 = g.node(0);
  a.dx = a.dy = g.spacing();
  return a;
}

std::vector<unsigned char> palette_indices(const RealMatrix& data) {
  if (data.size() == 0) throw std::invalid_argument("heatmap data is empty");
  if (!data.allFinite()) throw std::invalid_argument("heatmap data contains non-finite values");
  const double lo = data.minCoeff(), hi = data.maxCoeff();
  std::vector<unsigned char> idx(static_cast<std::size_t>(data.size()), 0);
  if (hi > lo) {
    std::size_t p = 0;
    for (Index i = 0; i < data.rows(); ++i)
      for (Index j = 0; j < data.cols(); ++j)
        idx[p++] = static_cast<unsigned char>(std::lround(255.0 * (data(i, j) - lo) / (hi - lo)));
  }
  return idx;
}

std::vector<unsigned char> heatmap_png(const RealMatrix& data) {
  const auto idx = palette_indices(data);
  const auto rows = static_cast<png_uint_32>(data.rows()), cols = static_cast<png_uint_32>(data.cols());
  std::vector<std::vector<png_byte>> lines(rows, std::vector<png_byte>(3 * cols));
  for (png_uint_32 i = 0; i < rows; ++i)
    for (png_uint_32 j = 0; j < cols; ++j) {
      const auto c = palette_color(idx[i * cols + j]);
      std::copy(c.begin(), c.end(), lines[rows - 1 - i].begin() + 3 * j);
    }
  std::vector<png_bytep> ptrs;
  for (auto& l : lines) ptrs.push_back(l.data());

  std::vector<unsigned char> out;
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  png_infop info = png ? png_create_info_struct(png) : nullptr;
  if (!info) {
    png_destroy_write_struct(&png, nullptr);
    throw std::runtime_error("png initialisation failed");
  }
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    throw std::runtime_error("png encoding failed");
  }
  png_set_write_fn(png, &out, png_append, nullptr);
  png_set_compression_level(png, 9);
  png_set_IHDR(png, info, cols, rows, 8, PNG_COLOR_TYPE_RGB, PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
               PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  png_write_image(png, ptrs.data());
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
  return out;
}

std::string heatmap_svg(const RealMatrix& data, const HeatmapAxes& axes) {
  const auto png = heatmap_png(data);
  const int rows = static_cast<int>(data.rows()), cols = static_cast<int>(data.cols());
  const double side = 400, left = 70, top = 40, bar = 16;
  const double cw = side / cols, ch = side / rows;
  const double width = left + side + 90, height = top + side + 60;

  std::string s;
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt("%g", width) + "\" height=\"" +
       fmt("%g", height) + "\" font-family=\"sans-serif\" font-size=\"11\">\n";
  s += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  s += "<text x=\"" + fmt("%g", left + side / 2) + "\" y=\"24\" text-anchor=\"middle\" font-size=\"14\">" +
       escape(axes.title) + "</text>\n";
  s += "<image x=\"" + fmt("%g", left) + "\" y=\"" + fmt("%g", top) + "\" width=\"" + fmt("%g", side) +
       "\" height=\"" + fmt("%g", side) +
       "\" preserveAspectRatio=\"none\" style=\"image-rendering:pixelated\" href=\"data:image/png;base64," +
       base64(png) + "\"/>\n";
  s += "<rect x=\"" + fmt("%g", left) + "\" y=\"" + fmt("%g", top) + "\" width=\"" + fmt("%g", side) +
       "\" height=\"" + fmt("%g", side) + "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int k : tick_indices(cols, 8)) {
    const double x = left + (k + 0.5) * cw;
    s += "<line x1=\"" + fmt("%.2f", x) + "\" y1=\"" + fmt("%g", top + side) + "\" x2=\"" + fmt("%.2f", x) +
         "\" y2=\"" + fmt("%g", top + side + 4) + "\" stroke=\"black\"/>\n";
    s += "<text x=\"" + fmt("%.2f", x) + "\" y=\"" + fmt("%g", top + side + 16) + "\" text-anchor=\"middle\">" +
         fmt("%.3g", axes.x0 + k * axes.dx) + "</text>\n";
  }
  for (int k : tick_indices(rows, 8)) {
    const double y = top + side - (k + 0.5) * ch;
    s += "<line x1=\"" + fmt("%g", left - 4) + "\" y1=\"" + fmt("%.2f", y) + "\" x2=\"" + fmt("%g", left) +
         "\" y2=\"" + fmt("%.2f", y) + "\" stroke=\"black\"/>\n";
    s += "<text x=\"" + fmt("%g", left - 6) + "\" y=\"" + fmt("%.2f", y + 4) + "\" text-anchor=\"end\">" +
         fmt("%.3g", axes.y0 + k * axes.dy) + "</text>\n";
  }
  s += "<text x=\"" + fmt("%g", left + side / 2) + "\" y=\"" + fmt("%g", top + side + 34) +
       "\" text-anchor=\"middle\">" + escape(axes.x_label) + "</text>\n";
  s += "<text x=\"20\" y=\"" + fmt("%g", top + side / 2) + "\" text-anchor=\"middle\" transform=\"rotate(-90 20 " +
       fmt("%g", top + side / 2) + ")\">" + escape(axes.y_label) + "</text>\n";
  // Colour scale.
  const double bx = left + side + 20;
  for (int k = 0; k < 64; ++k) {
    const auto c = palette_color(k * 255 / 63);
    s += "<rect x=\"" + fmt("%g", bx) + "\" y=\"" + fmt("%.2f", top + side - (k + 1) * side / 64) +
         "\" width=\"" + fmt("%g", bar) + "\" height=\"" + fmt("%.2f", side / 64 + 0.5) + "\" fill=\"rgb(" +
         std::to_string(c[0]) + "," + std::to_string(c[1]) + "," + std::to_string(c[2]) + ")\"/>\n";
  }
  s += "<text x=\"" + fmt("%g", bx + bar + 4) + "\" y=\"" + fmt("%g", top + side) + "\">" +
       fmt("%.3g", data.minCoeff()) + "</text>\n";
  s += "<text x=\"" + fmt("%g", bx + bar + 4) + "\" y=\"" + fmt("%g", top + 10) + "\">" +
       fmt("%.3g", data.maxCoeff()) + "</text>\n";
  s += "</svg>\n";
  return s;
}

std::string heatmap_svg(const std::vector<double>& flat, const std::vector<int>& shape, const HeatmapAxes& axes) {
  if (shape.size() != 2) throw std::invalid_argument("heatmap needs 2D data, got rank " + std::to_string(shape.size()));
  if (shape[0] <= 0 || shape[1] <= 0 || static_cast<std::size_t>(shape[0]) * shape[1] != flat.size())
    throw std::invalid_argument("heatmap shape does not match data size");
  RealMatrix m(shape[0], shape[1]);
  for (int i = 0; i < shape[0]; ++i)
    for (int j = 0; j < shape[1]; ++j) m(i, j) = flat[static_cast<std::size_t>(i) * shape[1] + j];
  return heatmap_svg(m, axes);
}

std::string bar_chart_svg(const std::vector<Bar>& bars, const std::string& title, double reference) {
  if (bars.empty()) throw std::invalid_argument("bar chart needs at least one bar");
  double top_value = reference;
  for (const auto& b : bars) {
    if (!std::isfinite(b.value)) throw std::invalid_argument("bar value for " + b.label + " is not finite");
    top_value = std::max(top_value, b.value);
  }
  top_value *= 1.1;
  const double left = 60, top = 40, plot_h = 300, slot = 70;
  const double plot_w = slot * bars.size();
  std::string s;
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt("%g", left + plot_w + 20) + "\" height=\"" +
       fmt("%g", top + plot_h + 50) + "\" font-family=\"sans-serif\" font-size=\"11\">\n";
  s += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  s += "<text x=\"" + fmt("%g", left + plot_w / 2) + "\" y=\"24\" text-anchor=\"middle\" font-size=\"14\">" +
       escape(title) + "</text>\n";
  for (std::size_t k = 0; k < bars.size(); ++k) {
    const double hgt = plot_h * std::max(0.0, bars[k].value) / top_value;
    const double x = left + slot * k + 10;
    s += "<rect x=\"" + fmt("%g", x) + "\" y=\"" + fmt("%.2f", top + plot_h - hgt) + "\" width=\"" +
         fmt("%g", slot - 20) + "\" height=\"" + fmt("%.2f", hgt) + "\" fill=\"rgb(59,82,139)\"/>\n";
    s += "<text x=\"" + fmt("%g", x + (slot - 20) / 2) + "\" y=\"" + fmt("%.2f", top + plot_h - hgt - 4) +
         "\" text-anchor=\"middle\">" + fmt("%.3g", bars[k].value) + "</text>\n";
    s += "<text x=\"" + fmt("%g", x + (slot - 20) / 2) + "\" y=\"" + fmt("%g", top + plot_h + 16) +
         "\" text-anchor=\"middle\">" + escape(bars[k].label) + "</text>\n";
  }
  const double ry = top + plot_h - plot_h * reference / top_value;
  s += "<line x1=\"" + fmt("%g", left) + "\" y1=\"" + fmt("%.2f", ry) + "\" x2=\"" + fmt("%g", left + plot_w) +
       "\" y2=\"" + fmt("%.2f", ry) + "\" stroke=\"firebrick\" stroke-dasharray=\"4 3\"/>\n";
  s += "<text x=\"" + fmt("%g", left - 6) + "\" y=\"" + fmt("%.2f", ry + 4) + "\" text-anchor=\"end\">" +
       fmt("%.3g", reference) + "</text>\n";
  s += "<line x1=\"" + fmt("%g", left) + "\" y1=\"" + fmt("%g", top + plot_h) + "\" x2=\"" + fmt("%g", left + plot_w) +
       "\" y2=\"" + fmt("%g", top + plot_h) + "\" stroke=\"black\"/>\n";
  s += "</svg>\n";
  return s;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string());
  out << text;
}

}  // namespace phasecalc
