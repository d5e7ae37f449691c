#include "simap/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace simap::linalg {

namespace {

void require_square(const Eigen::MatrixXd& a, const char* who) {
    if (a.rows() != a.cols())
        throw ParameterError(std::string(who) + ": matrix must be square");
    if (a.rows() < 1) throw ParameterError(std::string(who) + ": matrix must be non-empty");
}

void require_symmetric(const Eigen::MatrixXd& a, const char* who) {
    require_square(a, who);
    const double scale = a.cwiseAbs().maxCoeff();
    const double asym = (a - a.transpose()).cwiseAbs().maxCoeff();
    if (asym > kSymmetryTol * scale)
        throw ParameterError(std::string(who) + ": input is not symmetric (max deviation " +
                             std::to_string(asym) + ")");
}

struct KeptSpectrum {
    Eigen::VectorXd values;
    Eigen::MatrixXd vectors;
};

// Eigenpairs with |lambda| > rcond * max|lambda|, ascending order preserved.
KeptSpectrum keep_by_magnitude(const EigenDecomposition& eig, double rcond) {
    const Index m = eig.values.size();
    const double cutoff = rcond * eig.values.cwiseAbs().maxCoeff();
    std::vector<Index> kept;
    for (Index i = 0; i < m; ++i)
        if (std::abs(eig.values(i)) > cutoff) kept.push_back(i);
    KeptSpectrum out;
    out.values.resize(static_cast<Index>(kept.size()));
    out.vectors.resize(m, static_cast<Index>(kept.size()));
    for (Index c = 0; c < out.values.size(); ++c) {
        out.values(c) = eig.values(kept[static_cast<std::size_t>(c)]);
        out.vectors.col(c) = eig.vectors.col(kept[static_cast<std::size_t>(c)]);
    }
    return out;
}

Eigen::MatrixXd symmetric_inv_sqrt(const KeptSpectrum& kept, Index m) {
    if (kept.values.size() == 0) return Eigen::MatrixXd::Zero(m, m);
    const Eigen::MatrixXd scaled =
        kept.vectors * kept.values.cwiseSqrt().cwiseInverse().asDiagonal();
    return scaled * kept.vectors.transpose();
}

}  // namespace

EigenDecomposition sym_eig(const Eigen::MatrixXd& a) {
    require_symmetric(a, "sym_eig");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a);
    if (solver.info() != Eigen::Success)
        throw NumericError("sym_eig: eigendecomposition did not converge");
    return {solver.eigenvalues(), solver.eigenvectors()};
}

double min_eigenvalue(const Eigen::MatrixXd& a) { return sym_eig(a).values(0); }

Eigen::MatrixXd pinv(const Eigen::MatrixXd& a, double rcond) {
    if (rcond <= 0.0) throw ParameterError("pinv: rcond must be positive");
    if (a.size() == 0) return Eigen::MatrixXd::Zero(a.cols(), a.rows());
    const Svd f = svd(a);
    const double cutoff = f.sigma.size() == 0 ? 0.0 : rcond * f.sigma(0);
    Index r = 0;
    while (r < f.sigma.size() && f.sigma(r) > cutoff) ++r;
    if (r == 0) return Eigen::MatrixXd::Zero(a.cols(), a.rows());
    return f.v.leftCols(r) * f.sigma.head(r).cwiseInverse().asDiagonal() *
           f.u.leftCols(r).transpose();
}

Eigen::MatrixXd inv_sqrt_psd(const Eigen::MatrixXd& a, double rcond) {
    if (rcond <= 0.0) throw ParameterError("inv_sqrt_psd: rcond must be positive");
    const EigenDecomposition eig = sym_eig(a);
    const double norm2 = eig.values.cwiseAbs().maxCoeff();
    const double lambda_min = eig.values(0);
    if (lambda_min < -1e-8 * norm2)
        throw NumericError("inv_sqrt_psd: matrix is not PSD, lambda_min = " +
                               std::to_string(lambda_min),
                           lambda_min);
    // eigenvalues at or below rcond * lambda_max count as zero
    const double cutoff = rcond * eig.values(eig.values.size() - 1);
    std::vector<Index> idx;
    for (Index i = 0; i < eig.values.size(); ++i)
        if (eig.values(i) > cutoff && eig.values(i) > 0.0) idx.push_back(i);
    KeptSpectrum kept;
    kept.values.resize(static_cast<Index>(idx.size()));
    kept.vectors.resize(a.rows(), static_cast<Index>(idx.size()));
    for (Index c = 0; c < kept.values.size(); ++c) {
        kept.values(c) = eig.values(idx[static_cast<std::size_t>(c)]);
        kept.vectors.col(c) = eig.vectors.col(idx[static_cast<std::size_t>(c)]);
    }
    return symmetric_inv_sqrt(kept, a.rows());
}

SignedInvSqrt signed_inv_sqrt(const Eigen::MatrixXd& a, double rcond) {
    if (rcond <= 0.0) throw ParameterError("signed_inv_sqrt: rcond must be positive");
    const EigenDecomposition eig = sym_eig(a);
    const KeptSpectrum kept = keep_by_magnitude(eig, rcond);
    const Index m = a.rows();
    const Index r = kept.values.size();
    if (r == 0) return {Eigen::MatrixXd(m, 0), Eigen::VectorXd(0)};
    if ((kept.values.array() > 0.0).all()) {
        // PSD: same symmetric root as inv_sqrt_psd, signs all +1
        return {symmetric_inv_sqrt(kept, m), Eigen::VectorXd::Ones(m)};
    }
    SignedInvSqrt out;
    out.w = kept.vectors * kept.values.cwiseAbs().cwiseSqrt().cwiseInverse().asDiagonal();
    out.signs = kept.values.array().sign();
    return out;
}

Svd svd(const Eigen::MatrixXd& a) {
    if (a.size() == 0)
        return {Eigen::MatrixXd(a.rows(), 0), Eigen::VectorXd(0), Eigen::MatrixXd(a.cols(), 0)};
    Eigen::BDCSVD<Eigen::MatrixXd> solver(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
    if (solver.info() != Eigen::Success) throw NumericError("svd: decomposition failed");
    return {solver.matrixU(), solver.singularValues(), solver.matrixV()};
}

double spectral_norm(const Eigen::MatrixXd& a) {
    if (a.size() == 0) return 0.0;
    const Svd f = svd(a);
    return f.sigma.size() == 0 ? 0.0 : f.sigma(0);
}

std::vector<Index> magnitude_order(const Eigen::VectorXd& values) {
    std::vector<Index> order(static_cast<std::size_t>(values.size()));
    std::iota(order.begin(), order.end(), Index{0});
    std::sort(order.begin(), order.end(), [&](Index a, Index b) {
        const double ma = std::abs(values(a));
        const double mb = std::abs(values(b));
        if (ma != mb) return ma > mb;
        if (values(a) != values(b)) return values(a) > values(b);
        return a < b;
    });
    return order;
}

Eigen::MatrixXd RankKApprox::materialize() const {
    if (values.size() == 0) return Eigen::MatrixXd::Zero(vectors.rows(), vectors.rows());
    return vectors * values.asDiagonal() * vectors.transpose();
}

RankKApprox optimal_rank_k(const Eigen::MatrixXd& k, Index rank) {
    require_square(k, "optimal_rank_k");
    if (rank < 1 || rank > k.rows())
        throw ParameterError("optimal_rank_k: need 1 <= k <= n, got k=" + std::to_string(rank));
    const EigenDecomposition eig = sym_eig(k);
    const std::vector<Index> order = magnitude_order(eig.values);
    RankKApprox out;
    out.values.resize(rank);
    out.vectors.resize(k.rows(), rank);
    for (Index c = 0; c < rank; ++c) {
        out.values(c) = eig.values(order[static_cast<std::size_t>(c)]);
        out.vectors.col(c) = eig.vectors.col(order[static_cast<std::size_t>(c)]);
    }
    return out;
}

}  // namespace simap::linalg
