#include "simap/matrix_io.hpp"

#include <array>
#include <bit>
#include <charconv>
#include <cstring>
#include <fstream>
#include <sstream>
#include <system_error>
#include <vector>

namespace simap::io {

namespace {

constexpr char kMagic[4] = {'S', 'I', 'M', 'M'};
constexpr unsigned char kVersion = 1;

static_assert(std::endian::native == std::endian::little,
              "binary matrix format is little-endian; add byte swapping for this platform");

void check_finite(const Eigen::MatrixXd& k, const std::filesystem::path& path) {
    if (!k.allFinite())
        throw IoError("matrix file '" + path.string() + "' contains non-finite entries");
}

Eigen::MatrixXd load_binary(std::ifstream& in, const std::filesystem::path& path) {
    unsigned char version = 0;
    in.read(reinterpret_cast<char*>(&version), 1);
    if (!in || version != kVersion)
        throw IoError("unsupported matrix file version in '" + path.string() + "'");
    std::uint64_t n = 0;
    in.read(reinterpret_cast<char*>(&n), sizeof(n));
    if (!in || n == 0 || n > (1u << 20))
        throw IoError("bad matrix dimension in '" + path.string() + "'");
    const Index dim = static_cast<Index>(n);
    Eigen::MatrixXd k(dim, dim);
    std::vector<double> row(n);
    for (Index i = 0; i < dim; ++i) {
        in.read(reinterpret_cast<char*>(row.data()),
                static_cast<std::streamsize>(n * sizeof(double)));
        if (!in) throw IoError("truncated matrix file '" + path.string() + "'");
        for (Index j = 0; j < dim; ++j) k(i, j) = row[static_cast<std::size_t>(j)];
    }
    check_finite(k, path);
    return k;
}

Eigen::MatrixXd load_csv(std::ifstream& in, const std::filesystem::path& path) {
    std::string line;
    if (!std::getline(in, line)) throw IoError("empty matrix file '" + path.string() + "'");
    Index n = 0;
    {
        const char* begin = line.data();
        const char* end = begin + line.size();
        auto [ptr, ec] = std::from_chars(begin, end, n);
        if (ec != std::errc{} || ptr != end || n < 1)
            throw IoError("bad matrix header line in '" + path.string() + "'");
    }
    Eigen::MatrixXd k(n, n);
    for (Index i = 0; i < n; ++i) {
        if (!std::getline(in, line))
            throw IoError("matrix file '" + path.string() + "' ends after " +
                          std::to_string(i) + " of " + std::to_string(n) + " rows");
        const char* pos = line.data();
        const char* end = line.data() + line.size();
        for (Index j = 0; j < n; ++j) {
            if (j > 0) {
                if (pos >= end || *pos != ',')
                    throw IoError("row " + std::to_string(i) + " of '" + path.string() +
                                  "' has fewer than " + std::to_string(n) + " values");
                ++pos;
            }
            double v = 0.0;
            auto [ptr, ec] = std::from_chars(pos, end, v);
            if (ec != std::errc{})
                throw IoError("bad value in row " + std::to_string(i) + " of '" +
                              path.string() + "'");
            k(i, j) = v;
            pos = ptr;
        }
        if (pos != end)
            throw IoError("row " + std::to_string(i) + " of '" + path.string() +
                          "' has trailing characters");
    }
    check_finite(k, path);
    return k;
}

}  // namespace

std::string format_double(double v) {
    std::array<char, 64> buf{};
    auto [ptr, ec] =
        std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::general, 17);
    if (ec != std::errc{}) throw IoError("format_double: conversion failed");
    return std::string(buf.data(), ptr);
}

MatrixFormat format_for_path(const std::filesystem::path& path) {
    const auto ext = path.extension().string();
    return (ext == ".bin" || ext == ".simm") ? MatrixFormat::binary : MatrixFormat::csv;
}

void save_matrix(const std::filesystem::path& path, const Eigen::MatrixXd& k,
                 MatrixFormat format) {
    if (k.rows() != k.cols() || k.rows() < 1)
        throw ParameterError("save_matrix: matrix must be square and non-empty");
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    if (format == MatrixFormat::binary) {
        out.write(kMagic, 4);
        out.put(static_cast<char>(kVersion));
        const std::uint64_t n = static_cast<std::uint64_t>(k.rows());
        out.write(reinterpret_cast<const char*>(&n), sizeof(n));
        for (Index i = 0; i < k.rows(); ++i)
            for (Index j = 0; j < k.cols(); ++j) {
                const double v = k(i, j);
                out.write(reinterpret_cast<const char*>(&v), sizeof(v));
            }
    } else {
        out << k.rows() << '\n';
        std::string line;
        for (Index i = 0; i < k.rows(); ++i) {
            line.clear();
            for (Index j = 0; j < k.cols(); ++j) {
                if (j > 0) line += ',';
                line += format_double(k(i, j));
            }
            line += '\n';
            out << line;
        }
    }
    if (!out) throw IoError("error writing '" + path.string() + "'");
}

Eigen::MatrixXd load_matrix(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open matrix file '" + path.string() + "'");
    char magic[4] = {};
    in.read(magic, 4);
    if (in && std::memcmp(magic, kMagic, 4) == 0) return load_binary(in, path);
    in.clear();
    in.seekg(0);
    return load_csv(in, path);
}

}  // namespace simap::io
