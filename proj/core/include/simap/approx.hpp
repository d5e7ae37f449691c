#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "simap/linalg.hpp"
#include "simap/oracle.hpp"
#include "simap/sampling.hpp"

namespace simap {

enum class ShiftMode { clamped, verbatim };
enum class SkeletonSampling { nested, independent };
enum class StacurVariant { shared, distinct };
enum class CurMethod { skeleton, sicur, stacur_shared, stacur_distinct };

const char* to_string(CurMethod m);

/// Factored approximation K~ = Z * diag(signs) * Z^T. On the PSD path
/// (all signs +1) inner_root maps a row of landmark similarities to an
/// embedding row, which is what out-of-sample extension multiplies by.
struct NystromFactor {
    Eigen::MatrixXd z;           // n x r
    Eigen::VectorXd signs;       // r entries, +-1
    IndexSample landmarks;       // S1, draw order == column order
    Eigen::MatrixXd inner_root;  // s1 x r
    double shift = 0.0;          // e added to landmark-aligned diagonal entries
    double alpha = 1.0;
    double rescale_beta = 1.0;   // 1.0 when rescaling disabled or e == 0

    bool psd_path() const { return (signs.array() > 0.0).all(); }
};

/// Triple K~ = C * U * R with the landmark sets that produced it.
struct CURFactor {
    Eigen::MatrixXd c;  // n x s1
    Eigen::MatrixXd u;  // s1 x s2
    Eigen::MatrixXd r;  // s2 x n
    IndexSample col_landmarks;  // S1
    IndexSample row_landmarks;  // S2
    CurMethod method = CurMethod::skeleton;
};

/// Classic Nystrom: K~ = KS (S^T K S)^+ S^T K from one uniform sample.
/// Indefinite inner matrices yield a signed factor rather than an error;
/// an all-zero inner matrix yields a rank-0 factor.
NystromFactor classic_nystrom(const SimilarityOracle& oracle, Index s, std::uint64_t seed,
                              double rcond = linalg::kDefaultRcond);

/// Submatrix-shifted Nystrom. Draws nested samples S1 within S2, estimates
/// the eigenvalue shift e from lambda_min(S2^T K S2) (clamped:
/// e = alpha*max(0, -lambda); verbatim: e = -alpha*lambda), shifts the
/// landmark-aligned diagonal of KS1 and the diagonal of S1^T K S1, and
/// factors the shifted matrix on the PSD path. With rescaling the shifted
/// inner matrix is scaled by beta = ||S1^T K S1||_2 / ||S1^T K S1 + e I||_2.
NystromFactor sms_nystrom(const SimilarityOracle& oracle, Index s1, Index s2, double alpha,
                          std::uint64_t seed, double rcond = linalg::kDefaultRcond,
                          ShiftMode shift_mode = ShiftMode::clamped, bool rescale = false);

/// Skeleton approximation: C = KS1, R = S2^T K, U = (S2^T K S1)^+.
CURFactor skeleton(const SimilarityOracle& oracle, Index s1, Index s2,
                   SkeletonSampling sampling, std::uint64_t seed,
                   double rcond = linalg::kDefaultRcond);

/// Skeleton with nested samples and s2 = 2*s1.
CURFactor sicur(const SimilarityOracle& oracle, Index s1, std::uint64_t seed,
                double rcond = linalg::kDefaultRcond);

/// CUR with U = (n/s) (C^T C)^+ (S1^T K S2), s1 = s2 = s; S2 is either the
/// same sample as S1 (shared) or an independent draw (distinct).
CURFactor stacur(const SimilarityOracle& oracle, Index s, StacurVariant variant,
                 std::uint64_t seed, double rcond = linalg::kDefaultRcond);

Eigen::MatrixXd reconstruct(const NystromFactor& factor, const std::vector<Index>& rows,
                            const std::vector<Index>& cols);
Eigen::MatrixXd reconstruct(const CURFactor& factor, const std::vector<Index>& rows,
                            const std::vector<Index>& cols);
Eigen::MatrixXd reconstruct_full(const NystromFactor& factor);
Eigen::MatrixXd reconstruct_full(const CURFactor& factor);

/// Rows of Z as point embeddings; PSD-path factors only.
Eigen::MatrixXd embed_nystrom(const NystromFactor& factor);

/// CUR embeddings C * W * sqrt(Sigma) from the thin SVD U = W Sigma V^T,
/// keeping singular values above rcond * sigma_max.
Eigen::MatrixXd embed_cur(const CURFactor& factor, double rcond = linalg::kDefaultRcond);

/// The extension matrix a new point's landmark-similarity row is multiplied
/// by: inner_root for Nystrom factors, W*sqrt(Sigma) for CUR factors.
Eigen::MatrixXd extension_matrix(const CURFactor& factor,
                                 double rcond = linalg::kDefaultRcond);

/// Embed one out-of-sample point from its similarities to the landmarks (in
/// landmark order). When the point is landmark slot k, pass as_landmark = k
/// so the diagonal shift is applied; extending with row i of the gathered
/// KS1 then reproduces row i of Z.
Eigen::VectorXd extend_embedding(const NystromFactor& factor, const Eigen::VectorXd& sims,
                                 std::optional<Index> as_landmark = std::nullopt);

}  // namespace simap
