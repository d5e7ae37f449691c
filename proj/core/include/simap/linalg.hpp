#pragma once

#include <vector>

#include <Eigen/Dense>

#include "simap/types.hpp"

namespace simap::linalg {

/// Relative cutoff below which singular/eigen values are treated as zero in
/// pseudo-inversions and inverse square roots.
inline constexpr double kDefaultRcond = 1e-10;

/// Relative tolerance for the input-symmetry precondition of sym_eig.
inline constexpr double kSymmetryTol = 1e-8;

struct EigenDecomposition {
    Eigen::VectorXd values;   // ascending
    Eigen::MatrixXd vectors;  // orthonormal columns, matching order
};

/// Full symmetric eigendecomposition, values ascending.
/// Requires ||A - A^T||_max <= 1e-8 * ||A||_max.
EigenDecomposition sym_eig(const Eigen::MatrixXd& a);

double min_eigenvalue(const Eigen::MatrixXd& a);

/// Moore-Penrose pseudoinverse via SVD, dropping singular values below
/// rcond * sigma_max.
Eigen::MatrixXd pinv(const Eigen::MatrixXd& a, double rcond = kDefaultRcond);

/// Symmetric B with B*A*B equal to the projector onto the kept eigenspace.
/// Requires lambda_min(A) >= -1e-8 * ||A||_2; throws NumericError carrying
/// lambda_min otherwise (the classic-Nystrom failure signal).
Eigen::MatrixXd inv_sqrt_psd(const Eigen::MatrixXd& a, double rcond = kDefaultRcond);

struct SignedInvSqrt {
    Eigen::MatrixXd w;      // m x r (or symmetric m x m when PSD, see below)
    Eigen::VectorXd signs;  // +-1 per column of w
};

/// Factored inverse square root of a symmetric, possibly indefinite matrix:
/// W * diag(signs) * W^T equals pinv(A). When the kept spectrum is PSD this
/// coincides with inv_sqrt_psd (symmetric W, all signs +1) so that PSD
/// inputs reduce to the classic formula bit-for-bit; with mixed signs W is
/// V|Lambda|^{-1/2} over the kept eigenpairs in ascending eigenvalue order.
SignedInvSqrt signed_inv_sqrt(const Eigen::MatrixXd& a, double rcond = kDefaultRcond);

struct Svd {
    Eigen::MatrixXd u;      // p x r
    Eigen::VectorXd sigma;  // descending
    Eigen::MatrixXd v;      // q x r
};

/// Thin SVD, singular values descending.
Svd svd(const Eigen::MatrixXd& a);

double spectral_norm(const Eigen::MatrixXd& a);

/// Positions sorted by descending |values[i]|; ties broken by signed value
/// descending, then by index.
std::vector<Index> magnitude_order(const Eigen::VectorXd& values);

/// Best Frobenius rank-k approximation of a symmetric matrix, kept in
/// factored form: materialize() = vectors * diag(values) * vectors^T.
struct RankKApprox {
    Eigen::MatrixXd vectors;  // n x k
    Eigen::VectorXd values;   // k, magnitude-descending
    Eigen::MatrixXd materialize() const;
};

RankKApprox optimal_rank_k(const Eigen::MatrixXd& k, Index rank);

}  // namespace simap::linalg
