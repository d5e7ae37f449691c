#include "simap/approx.hpp"

#include <cmath>
#include <string>

#include "simap/rng.hpp"

namespace simap {

const char* to_string(CurMethod m) {
    switch (m) {
        case CurMethod::skeleton: return "skeleton";
        case CurMethod::sicur: return "sicur";
        case CurMethod::stacur_shared: return "stacur_shared";
        case CurMethod::stacur_distinct: return "stacur_distinct";
    }
    return "?";
}

namespace {

// S1^T K S1 sliced out of the gathered KS1 block; no extra oracle calls.
Eigen::MatrixXd inner_from_columns(const Eigen::MatrixXd& c, const IndexSample& landmarks) {
    const Index s = landmarks.size();
    Eigen::MatrixXd inner(s, s);
    for (Index k = 0; k < s; ++k) inner.row(k) = c.row(landmarks[k]);
    return inner;
}

NystromFactor rank_zero_factor(Index n, IndexSample landmarks, double shift, double alpha) {
    NystromFactor f;
    f.z = Eigen::MatrixXd(n, 0);
    f.signs = Eigen::VectorXd(0);
    f.inner_root = Eigen::MatrixXd(landmarks.size(), 0);
    f.landmarks = std::move(landmarks);
    f.shift = shift;
    f.alpha = alpha;
    return f;
}

}  // namespace

NystromFactor classic_nystrom(const SimilarityOracle& oracle, Index s, std::uint64_t seed,
                              double rcond) {
    const Index n = oracle.size();
    if (s < 1 || s > n)
        throw ParameterError("classic_nystrom: need 1 <= s <= n, got s=" + std::to_string(s));
    IndexSample landmarks = sample_uniform(n, s, seed);
    const Eigen::MatrixXd c = gather_block(oracle, std::nullopt, landmarks);
    const Eigen::MatrixXd inner = inner_from_columns(c, landmarks);
    const linalg::SignedInvSqrt root = linalg::signed_inv_sqrt(inner, rcond);
    NystromFactor f;
    f.z = c * root.w;
    f.signs = root.signs;
    f.inner_root = root.w;
    f.landmarks = std::move(landmarks);
    return f;
}

NystromFactor sms_nystrom(const SimilarityOracle& oracle, Index s1, Index s2, double alpha,
                          std::uint64_t seed, double rcond, ShiftMode shift_mode,
                          bool rescale) {
    const Index n = oracle.size();
    if (s1 < 1 || s1 > s2 || s2 > n)
        throw ParameterError("sms_nystrom: need 1 <= s1 <= s2 <= n, got s1=" +
                             std::to_string(s1) + ", s2=" + std::to_string(s2));
    if (alpha < 1.0)
        throw ParameterError("sms_nystrom: alpha must be >= 1, got " + std::to_string(alpha));

    auto [inner_sample, outer_sample] = sample_nested(n, s1, s2, seed);
    const Eigen::MatrixXd outer_block = gather_block(oracle, outer_sample, outer_sample);
    Eigen::MatrixXd c = gather_block(oracle, std::nullopt, inner_sample);

    const double lambda = linalg::min_eigenvalue(outer_block);
    const double e = shift_mode == ShiftMode::clamped ? alpha * std::max(0.0, -lambda)
                                                      : -alpha * lambda;

    // S1 is the prefix of S2, so S1^T K S1 is the leading block of S2^T K S2
    Eigen::MatrixXd inner = outer_block.topLeftCorner(s1, s1);
    if (inner.cwiseAbs().maxCoeff() == 0.0 && e == 0.0)
        return rank_zero_factor(n, std::move(inner_sample), e, alpha);

    for (Index k = 0; k < s1; ++k) c(inner_sample[k], k) += e;
    inner.diagonal().array() += e;

    double beta = 1.0;
    if (rescale && e != 0.0) {
        beta = linalg::spectral_norm(outer_block.topLeftCorner(s1, s1)) /
               linalg::spectral_norm(inner);
        inner *= beta;
    }

    Eigen::MatrixXd root;
    try {
        root = linalg::inv_sqrt_psd(inner, rcond);
    } catch (const NumericError& err) {
        const char* mode = shift_mode == ShiftMode::clamped ? "clamped" : "verbatim";
        throw NumericError("sms_nystrom(" + std::string(mode) +
                               "): shifted inner matrix is not PSD; " + err.what(),
                           err.lambda_min());
    }

    NystromFactor f;
    f.z = c * root;
    f.signs = Eigen::VectorXd::Ones(s1);
    f.inner_root = std::move(root);
    f.landmarks = std::move(inner_sample);
    f.shift = e;
    f.alpha = alpha;
    f.rescale_beta = beta;
    return f;
}

CURFactor skeleton(const SimilarityOracle& oracle, Index s1, Index s2,
                   SkeletonSampling sampling, std::uint64_t seed, double rcond) {
    const Index n = oracle.size();
    if (s1 < 1 || s1 > n || s2 < 1 || s2 > n)
        throw ParameterError("skeleton: need 1 <= s1, s2 <= n, got s1=" + std::to_string(s1) +
                             ", s2=" + std::to_string(s2));
    IndexSample cols, rows;
    if (sampling == SkeletonSampling::nested) {
        if (s1 > s2)
            throw ParameterError("skeleton: nested sampling requires s1 <= s2");
        auto [s1_sample, s2_sample] = sample_nested(n, s1, s2, seed);
        cols = std::move(s1_sample);
        rows = std::move(s2_sample);
    } else {
        cols = sample_uniform(n, s1, seed);
        Random probe(seed, Stream::landmarks_independent);
        rows = sample_uniform(n, s2, probe.next_u64());
    }
    const Eigen::MatrixXd c = gather_block(oracle, std::nullopt, cols);
    const Eigen::MatrixXd r = gather_block(oracle, rows, std::nullopt);
    // S2^T K S1 sliced from the gathered columns
    Eigen::MatrixXd cross(s2, s1);
    for (Index k = 0; k < s2; ++k) cross.row(k) = c.row(rows[k]);
    CURFactor f;
    f.u = linalg::pinv(cross, rcond);
    f.c = c;
    f.r = r;
    f.col_landmarks = std::move(cols);
    f.row_landmarks = std::move(rows);
    f.method = CurMethod::skeleton;
    return f;
}

CURFactor sicur(const SimilarityOracle& oracle, Index s1, std::uint64_t seed, double rcond) {
    const Index n = oracle.size();
    if (s1 < 1 || 2 * s1 > n)
        throw ParameterError("sicur: need 1 <= s1 and 2*s1 <= n, got s1=" + std::to_string(s1) +
                             ", n=" + std::to_string(n));
    CURFactor f = skeleton(oracle, s1, 2 * s1, SkeletonSampling::nested, seed, rcond);
    f.method = CurMethod::sicur;
    return f;
}

CURFactor stacur(const SimilarityOracle& oracle, Index s, StacurVariant variant,
                 std::uint64_t seed, double rcond) {
    const Index n = oracle.size();
    if (s < 1 || s > n)
        throw ParameterError("stacur: need 1 <= s <= n, got s=" + std::to_string(s));
    IndexSample cols = sample_uniform(n, s, seed);
    IndexSample rows;
    if (variant == StacurVariant::shared) {
        rows = cols;
    } else {
        Random probe(seed, Stream::landmarks_independent);
        rows = sample_uniform(n, s, probe.next_u64());
    }
    const Eigen::MatrixXd c = gather_block(oracle, std::nullopt, cols);
    const Eigen::MatrixXd r = gather_block(oracle, rows, std::nullopt);
    // S1^T K S2: sliced from the gathered columns when the samples coincide,
    // gathered directly otherwise
    Eigen::MatrixXd s1_k_s2(s, s);
    if (variant == StacurVariant::shared) {
        for (Index k = 0; k < s; ++k) s1_k_s2.row(k) = c.row(cols[k]);
    } else {
        for (Index k = 0; k < s; ++k)
            for (Index l = 0; l < s; ++l) s1_k_s2(k, l) = oracle(cols[k], rows[l]);
    }
    const Eigen::MatrixXd gram = c.transpose() * c;
    CURFactor f;
    f.u = (static_cast<double>(n) / static_cast<double>(s)) * linalg::pinv(gram, rcond) *
          s1_k_s2;
    f.c = c;
    f.r = r;
    f.col_landmarks = std::move(cols);
    f.row_landmarks = std::move(rows);
    f.method =
        variant == StacurVariant::shared ? CurMethod::stacur_shared : CurMethod::stacur_distinct;
    return f;
}

namespace {

Eigen::MatrixXd select_rows(const Eigen::MatrixXd& m, const std::vector<Index>& rows) {
    Eigen::MatrixXd out(static_cast<Index>(rows.size()), m.cols());
    for (std::size_t k = 0; k < rows.size(); ++k) {
        const Index i = rows[k];
        if (i < 0 || i >= m.rows()) throw ParameterError("reconstruct: row index out of range");
        out.row(static_cast<Index>(k)) = m.row(i);
    }
    return out;
}

Eigen::MatrixXd select_cols(const Eigen::MatrixXd& m, const std::vector<Index>& cols) {
    Eigen::MatrixXd out(m.rows(), static_cast<Index>(cols.size()));
    for (std::size_t k = 0; k < cols.size(); ++k) {
        const Index j = cols[k];
        if (j < 0 || j >= m.cols()) throw ParameterError("reconstruct: column index out of range");
        out.col(static_cast<Index>(k)) = m.col(j);
    }
    return out;
}

}  // namespace

Eigen::MatrixXd reconstruct(const NystromFactor& factor, const std::vector<Index>& rows,
                            const std::vector<Index>& cols) {
    // scaling by +-1 is exact, so the full product is exactly symmetric
    const Eigen::MatrixXd zr = select_rows(factor.z, rows) * factor.signs.asDiagonal();
    return zr * select_rows(factor.z, cols).transpose();
}

Eigen::MatrixXd reconstruct(const CURFactor& factor, const std::vector<Index>& rows,
                            const std::vector<Index>& cols) {
    return select_rows(factor.c, rows) * factor.u * select_cols(factor.r, cols);
}

Eigen::MatrixXd reconstruct_full(const NystromFactor& factor) {
    const Eigen::MatrixXd zs = factor.z * factor.signs.asDiagonal();
    return zs * factor.z.transpose();
}

Eigen::MatrixXd reconstruct_full(const CURFactor& factor) {
    return factor.c * factor.u * factor.r;
}

Eigen::MatrixXd embed_nystrom(const NystromFactor& factor) {
    if (!factor.psd_path())
        throw NumericError(
            "embed_nystrom: factor has mixed signs (indefinite inner matrix); embed via the "
            "sms path or keep the signs alongside Z");
    return factor.z;
}

Eigen::MatrixXd extension_matrix(const CURFactor& factor, double rcond) {
    const linalg::Svd f = linalg::svd(factor.u);
    const double cutoff = f.sigma.size() == 0 ? 0.0 : rcond * f.sigma(0);
    Index r = 0;
    while (r < f.sigma.size() && f.sigma(r) > cutoff) ++r;
    return f.u.leftCols(r) * f.sigma.head(r).cwiseSqrt().asDiagonal();
}

Eigen::MatrixXd embed_cur(const CURFactor& factor, double rcond) {
    return factor.c * extension_matrix(factor, rcond);
}

Eigen::VectorXd extend_embedding(const NystromFactor& factor, const Eigen::VectorXd& sims,
                                 std::optional<Index> as_landmark) {
    if (!factor.psd_path())
        throw NumericError("extend_embedding: extension requires a PSD-path factor");
    if (sims.size() != factor.landmarks.size())
        throw ParameterError("extend_embedding: expected " +
                             std::to_string(factor.landmarks.size()) + " similarities, got " +
                             std::to_string(sims.size()));
    Eigen::RowVectorXd row = sims.transpose();
    if (as_landmark) {
        if (*as_landmark < 0 || *as_landmark >= factor.landmarks.size())
            throw ParameterError("extend_embedding: landmark position out of range");
        row(*as_landmark) += factor.shift;
    }
    return (row * factor.inner_root).transpose();
}

}  // namespace simap
