#include "simap/generators.hpp"

#include <cmath>
#include <memory>
#include <utility>

#include "simap/matrix_io.hpp"
#include "simap/rng.hpp"

namespace simap {

namespace {

Eigen::MatrixXd gaussian_matrix(Index rows, Index cols, std::uint64_t seed, Stream stream) {
    Random rng(seed, stream);
    Eigen::MatrixXd g(rows, cols);
    for (Index i = 0; i < rows; ++i)
        for (Index j = 0; j < cols; ++j) g(i, j) = rng.normal();
    return g;
}

// copy the upper triangle onto the lower so symmetry is exact, not just
// up to rounding
void mirror_upper(Eigen::MatrixXd& k) {
    for (Index i = 0; i < k.rows(); ++i)
        for (Index j = i + 1; j < k.cols(); ++j) k(j, i) = k(i, j);
}

}  // namespace

StoredOracle random_psd(Index n, std::uint64_t seed) {
    if (n < 1) throw ParameterError("random_psd: n must be positive");
    const Eigen::MatrixXd g = gaussian_matrix(n, n, seed, Stream::gaussian);
    Eigen::MatrixXd k = g * g.transpose();
    mirror_upper(k);
    return StoredOracle(std::move(k));
}

StoredOracle planted_spectrum(Index n, const Eigen::VectorXd& eigenvalues,
                              std::uint64_t seed) {
    if (n < 1) throw ParameterError("planted_spectrum: n must be positive");
    if (eigenvalues.size() != n)
        throw ParameterError("planted_spectrum: expected " + std::to_string(n) +
                             " eigenvalues, got " + std::to_string(eigenvalues.size()));
    const Eigen::MatrixXd g = gaussian_matrix(n, n, seed, Stream::orthogonal);
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
    Eigen::MatrixXd q = qr.householderQ();
    // fix the sign ambiguity so Q is Haar-like
    const Eigen::MatrixXd r = qr.matrixQR();
    for (Index j = 0; j < n; ++j)
        if (r(j, j) < 0.0) q.col(j) = -q.col(j);
    Eigen::MatrixXd k = q * eigenvalues.asDiagonal() * q.transpose();
    mirror_upper(k);
    return StoredOracle(std::move(k));
}

SimilarityOracle exp_distance_oracle(Eigen::MatrixXd points, double gamma) {
    if (gamma <= 0.0) throw ParameterError("exp_distance_oracle: gamma must be positive");
    if (points.rows() < 1) throw ParameterError("exp_distance_oracle: empty point set");
    auto p = std::make_shared<const Eigen::MatrixXd>(std::move(points));
    return SimilarityOracle(
        p->rows(),
        [p, gamma](Index i, Index j) {
            return std::exp(-gamma * (p->row(i) - p->row(j)).norm());
        },
        true);
}

StoredOracle stored_matrix_oracle(Eigen::MatrixXd k) { return StoredOracle(std::move(k)); }

StoredOracle stored_matrix_oracle(const std::filesystem::path& path) {
    return StoredOracle(io::load_matrix(path));
}

SimilarityOracle asymmetric_noise(const SimilarityOracle& inner, double epsilon,
                                  std::uint64_t seed) {
    if (epsilon < 0.0) throw ParameterError("asymmetric_noise: epsilon must be >= 0");
    if (epsilon == 0.0) return inner;
    SimilarityOracle copy = inner;
    const std::uint64_t site = mix_seed(seed, static_cast<std::uint64_t>(Stream::noise));
    return SimilarityOracle(
        inner.size(),
        [copy, site, epsilon](Index i, Index j) {
            return copy(i, j) + hashed_uniform_sym(site, i, j, epsilon);
        },
        false);
}

}  // namespace simap
