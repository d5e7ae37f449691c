#pragma once

#include <filesystem>
#include <string>

#include <Eigen/Dense>

#include "simap/types.hpp"

namespace simap::io {

// Matrix file formats.
//   CSV:    first line "n", then n lines of n comma-separated decimal values.
//   Binary: magic "SIMM", version byte 1, unsigned 64-bit little-endian n,
//           then n*n little-endian IEEE-754 doubles, row-major.
// All decimal output uses '.' and 17 significant digits, so doubles
// round-trip exactly.

enum class MatrixFormat { csv, binary };

/// Shortest exact decimal rendering at up to 17 significant digits,
/// locale-independent.
std::string format_double(double v);

void save_matrix(const std::filesystem::path& path, const Eigen::MatrixXd& k,
                 MatrixFormat format);
Eigen::MatrixXd load_matrix(const std::filesystem::path& path);

/// Format chosen from the file extension: .bin/.simm are binary, anything
/// else CSV.
MatrixFormat format_for_path(const std::filesystem::path& path);

}  // namespace simap::io
