#include "simap/oracle.hpp"

#include <cmath>
#include <utility>

namespace simap {

SimilarityOracle::SimilarityOracle(Index n, EvalFn evaluate, bool symmetric_hint)
    : n_(n), evaluate_(std::move(evaluate)), symmetric_hint_(symmetric_hint) {
    if (n_ < 1) throw ParameterError("SimilarityOracle: size must be positive");
    if (!evaluate_) throw ParameterError("SimilarityOracle: missing evaluate function");
}

double SimilarityOracle::operator()(Index i, Index j) const {
    if (i < 0 || i >= n_ || j < 0 || j >= n_)
        throw ParameterError("SimilarityOracle: pair (" + std::to_string(i) + ", " +
                             std::to_string(j) + ") out of range for n=" + std::to_string(n_));
    const double v = evaluate_(i, j);
    if (!std::isfinite(v))
        throw NumericError("SimilarityOracle: non-finite value at (" + std::to_string(i) +
                           ", " + std::to_string(j) + ")");
    return v;
}

SimilarityOracle symmetrize_oracle(const SimilarityOracle& inner) {
    SimilarityOracle copy = inner;
    return SimilarityOracle(
        inner.size(),
        [copy](Index i, Index j) {
            if (i == j) return copy(i, i);
            return 0.5 * (copy(i, j) + copy(j, i));
        },
        true);
}

struct CountingOracle::State {
    SimilarityOracle inner;
    bool unordered_keys;
    mutable std::mutex mutex;
    std::unordered_map<std::uint64_t, double> cache;

    State(SimilarityOracle o, bool unordered) : inner(std::move(o)), unordered_keys(unordered) {}

    std::uint64_t key(Index i, Index j) const {
        if (unordered_keys && i > j) std::swap(i, j);
        return static_cast<std::uint64_t>(i) * static_cast<std::uint64_t>(inner.size()) +
               static_cast<std::uint64_t>(j);
    }

    double evaluate(Index i, Index j) {
        const std::uint64_t k = key(i, j);
        {
            std::lock_guard<std::mutex> lock(mutex);
            auto it = cache.find(k);
            if (it != cache.end()) return it->second;
        }
        const double v = inner(i, j);
        std::lock_guard<std::mutex> lock(mutex);
        return cache.emplace(k, v).first->second;
    }
};

CountingOracle::CountingOracle(SimilarityOracle inner)
    : state_(std::make_shared<State>(inner, inner.symmetric_hint())),
      view_(inner.size(),
            [state = state_](Index i, Index j) { return state->evaluate(i, j); },
            inner.symmetric_hint()) {}

std::size_t CountingOracle::calls() const {
    std::lock_guard<std::mutex> lock(state_->mutex);
    return state_->cache.size();
}

Eigen::MatrixXd gather_block(const SimilarityOracle& oracle,
                             const std::optional<IndexSample>& rows,
                             const std::optional<IndexSample>& cols) {
    const Index n = oracle.size();
    const Index nr = rows ? rows->size() : n;
    const Index nc = cols ? cols->size() : n;
    if (rows && rows->domain_size() != n)
        throw ParameterError("gather_block: row sample domain does not match oracle size");
    if (cols && cols->domain_size() != n)
        throw ParameterError("gather_block: column sample domain does not match oracle size");
    Eigen::MatrixXd block(nr, nc);
    for (Index r = 0; r < nr; ++r) {
        const Index i = rows ? (*rows)[r] : r;
        for (Index c = 0; c < nc; ++c) {
            const Index j = cols ? (*cols)[c] : c;
            block(r, c) = oracle(i, j);
        }
    }
    return block;
}

namespace {

bool scan_symmetric(const Eigen::MatrixXd& k) {
    const double scale = k.size() == 0 ? 0.0 : k.cwiseAbs().maxCoeff();
    const double tol = 1e-8 * scale;
    for (Index i = 0; i < k.rows(); ++i)
        for (Index j = i + 1; j < k.cols(); ++j)
            if (std::abs(k(i, j) - k(j, i)) > tol) return false;
    return true;
}

}  // namespace

StoredOracle::StoredOracle(Eigen::MatrixXd k)
    : matrix_(std::make_shared<const Eigen::MatrixXd>(std::move(k))),
      oracle_(
          [&]() -> SimilarityOracle {
              if (matrix_->rows() != matrix_->cols())
                  throw ParameterError("StoredOracle: matrix must be square");
              if (!matrix_->allFinite())
                  throw ParameterError("StoredOracle: matrix has non-finite entries");
              auto m = matrix_;
              return SimilarityOracle(
                  m->rows(), [m](Index i, Index j) { return (*m)(i, j); },
                  scan_symmetric(*m));
          }()) {}

}  // namespace simap
