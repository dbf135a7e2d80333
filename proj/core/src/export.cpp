#include "lvt/export.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <openssl/evp.h>

#include "lvt/error.hpp"

namespace lvt {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string csv_columns(const std::vector<std::string>& header, const std::vector<std::vector<double>>& columns) {
  if (header.size() != columns.size()) throw std::logic_error("csv_columns: header/column count mismatch");
  const std::size_t rows = columns.empty() ? 0 : columns.front().size();
  for (const auto& c : columns) {
    if (c.size() != rows) throw std::logic_error("csv_columns: ragged columns");
  }
  std::string out;
  for (std::size_t k = 0; k < header.size(); ++k) out += (k ? "," : "") + header[k];
  out += '\n';
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t k = 0; k < columns.size(); ++k) {
      if (k) out += ',';
      out += format_double(columns[k][r]);
    }
    out += '\n';
  }
  return out;
}

void write_text(const std::filesystem::path& path, std::string_view content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ConfigError("cannot write " + path.string());
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw ConfigError("write failed for " + path.string());
}

std::string snapshot_csv(const GridSpec& gs, const FieldPair& s) {
  require_shape(gs, s.V, "exported V");
  require_shape(gs, s.K, "exported K");
  std::string out = "i,j,x,y,V,K\n";
  for (std::size_t j = 0; j < gs.Ny; ++j) {
    for (std::size_t i = 0; i < gs.Nx; ++i) {
      out += std::to_string(i) + ',' + std::to_string(j) + ',' + format_double(gs.x(i)) + ',' +
             format_double(gs.y(j)) + ',' + format_double(s.V(i, j)) + ',' + format_double(s.K(i, j)) + '\n';
    }
  }
  return out;
}

namespace {

unsigned char grey(double v, double lo, double hi) {
  if (!(hi > lo)) return 0;
  const double s = std::clamp((v - lo) / (hi - lo), 0.0, 1.0);
  return static_cast<unsigned char>(std::lround(s * 255.0));
}

}  // namespace

std::string heatmap_pgm(const Field& f) {
  const double lo = f.min(), hi = f.max();
  std::string out = "P5\n" + std::to_string(f.nx()) + " " + std::to_string(f.ny()) + "\n255\n";
  for (std::size_t r = 0; r < f.ny(); ++r) {
    const std::size_t j = f.ny() - 1 - r;
    for (std::size_t i = 0; i < f.nx(); ++i) out += static_cast<char>(grey(f(i, j), lo, hi));
  }
  return out;
}

std::string heatmap_svg(const Field& f, std::string_view title) {
  const double lo = f.min(), hi = f.max();
  constexpr int cell = 8;
  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << f.nx() * cell << "\" height=\"" << f.ny() * cell
      << "\" shape-rendering=\"crispEdges\">\n<title>" << title << " min=" << format_double(lo)
      << " max=" << format_double(hi) << "</title>\n";
  for (std::size_t r = 0; r < f.ny(); ++r) {
    const std::size_t j = f.ny() - 1 - r;
    for (std::size_t i = 0; i < f.nx(); ++i) {
      const int g = grey(f(i, j), lo, hi);
      out << "<rect x=\"" << i * cell << "\" y=\"" << r * cell << "\" width=\"" << cell << "\" height=\"" << cell
          << "\" fill=\"rgb(" << g << ',' << g << ',' << g << ")\"/>\n";
    }
  }
  out << "</svg>\n";
  return out.str();
}

std::string heatmap_name(std::string_view field, double tau, double t, std::string_view ext) {
  std::string s(field);
  s += '_' + format_double(tau) + '_' + format_double(t) + '.';
  s += ext;
  return s;
}

std::string sha256_hex(std::string_view bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("SHA-256 computation failed");
  }
  static constexpr char hex[] = "0123456789abcdef";
  std::string out;
  for (unsigned int k = 0; k < len; ++k) {
    out += hex[md[k] >> 4];
    out += hex[md[k] & 0xF];
  }
  return out;
}

std::string write_manifest(const std::filesystem::path& root) {
  namespace fs = std::filesystem;
  std::vector<std::string> rel;
  for (const auto& entry : fs::recursive_directory_iterator(root)) {
    if (!entry.is_regular_file()) continue;
    const std::string r = fs::relative(entry.path(), root).generic_string();
    if (r != "manifest.txt") rel.push_back(r);
  }
  std::sort(rel.begin(), rel.end());
  std::string text;
  for (const auto& r : rel) {
    std::ifstream in(root / r, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    text += r + '\t' + sha256_hex(buf.str()) + '\n';
  }
  write_text(root / "manifest.txt", text);
  return text;
}

}  // namespace lvt
