#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "lvt/grid.hpp"

namespace lvt {

/// Shortest round-trip decimal form; "nan", "inf", "-inf" for non-finite values.
std::string format_double(double v);

/// CSV text: header row, then one row per index of the (equal-length) columns.
std::string csv_columns(const std::vector<std::string>& header, const std::vector<std::vector<double>>& columns);

/// Writes `content` to `path` verbatim, creating parent directories.
void write_text(const std::filesystem::path& path, std::string_view content);

/// Snapshot as CSV rows `i,j,x,y,V,K`, j outer, i inner.
std::string snapshot_csv(const GridSpec& gs, const FieldPair& s);

/// 8-bit binary greyscale image scaled to [min, max] of the field; row 0 is the top (largest y).
std::string heatmap_pgm(const Field& f);
std::string heatmap_svg(const Field& f, std::string_view title);

/// `{field}_{tau}_{t}.{ext}`
std::string heatmap_name(std::string_view field, double tau, double t, std::string_view ext);

/// Lower-case hex SHA-256 of the bytes.
std::string sha256_hex(std::string_view bytes);

/// Writes root/manifest.txt with one `relative-path<TAB>sha-256` line per regular file under root,
/// sorted by path, manifest itself excluded. Returns the manifest text.
std::string write_manifest(const std::filesystem::path& root);

}  // namespace lvt
