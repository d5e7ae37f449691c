#pragma once

#include <cstdint>
#include <filesystem>

#include <Eigen/Dense>

#include "simap/oracle.hpp"

namespace simap {

/// Dense PSD test matrix G G^T with G an n x n standard-normal matrix.
StoredOracle random_psd(Index n, std::uint64_t seed);

/// Dense symmetric matrix with the requested spectrum: K = Q diag(vals) Q^T
/// for a Haar-like orthogonal Q (QR of a Gaussian matrix, R-diagonal signs
/// fixed).
StoredOracle planted_spectrum(Index n, const Eigen::VectorXd& eigenvalues,
                              std::uint64_t seed);

/// delta(i, j) = exp(-gamma * ||p_i - p_j||_2) over a fixed point set;
/// evaluated on the fly.
SimilarityOracle exp_distance_oracle(Eigen::MatrixXd points, double gamma);

/// Oracle over an in-memory matrix; symmetric_hint from a symmetry scan at
/// 1e-8 * max|entry|.
StoredOracle stored_matrix_oracle(Eigen::MatrixXd k);

/// Oracle over a matrix file (CSV or SIMM binary, sniffed by magic bytes).
StoredOracle stored_matrix_oracle(const std::filesystem::path& path);

/// Adds independent uniform(-eps, eps) noise per ordered pair, deterministic
/// in (i, j, seed). eps = 0 returns the inner oracle unchanged.
SimilarityOracle asymmetric_noise(const SimilarityOracle& inner, double epsilon,
                                  std::uint64_t seed);

}  // namespace simap
