#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <unordered_map>

#include <Eigen/Dense>

#include "simap/sampling.hpp"
#include "simap/types.hpp"

namespace simap {

/// The similarity function: the only access path to the matrix K.
/// Evaluations must be deterministic and finite; a NaN/Inf result is a hard
/// error, never propagated. Backends must tolerate concurrent evaluation of
/// distinct pairs.
class SimilarityOracle {
  public:
    using EvalFn = std::function<double(Index, Index)>;

    SimilarityOracle(Index n, EvalFn evaluate, bool symmetric_hint);

    Index size() const { return n_; }
    bool symmetric_hint() const { return symmetric_hint_; }

    /// Evaluate one pair; range-checked, finiteness-checked.
    double operator()(Index i, Index j) const;

  private:
    Index n_ = 0;
    EvalFn evaluate_;
    bool symmetric_hint_ = false;
};

/// Wraps an oracle as 0.5*(inner(i,j) + inner(j,i)); one inner call on the
/// diagonal, two off it. Idempotent on already-symmetric oracles.
SimilarityOracle symmetrize_oracle(const SimilarityOracle& inner);

/// Memoizing wrapper that counts distinct evaluated pairs: unordered pairs
/// when the inner oracle claims symmetry, ordered pairs otherwise. Cache
/// insertion is mutex-guarded; results are independent of evaluation order.
class CountingOracle {
  public:
    explicit CountingOracle(SimilarityOracle inner);

    const SimilarityOracle& oracle() const { return view_; }
    std::size_t calls() const;

  private:
    struct State;
    std::shared_ptr<State> state_;
    SimilarityOracle view_;
};

/// Dense block of oracle values. A disengaged sample means the full range
/// [0, n) in natural order; otherwise rows/columns follow the sample order.
Eigen::MatrixXd gather_block(const SimilarityOracle& oracle,
                             const std::optional<IndexSample>& rows,
                             const std::optional<IndexSample>& cols);

/// A similarity oracle backed by a dense in-memory matrix, kept alongside
/// the matrix itself so exact-error harnesses can reach the ground truth.
class StoredOracle {
  public:
    explicit StoredOracle(Eigen::MatrixXd k);

    const Eigen::MatrixXd& matrix() const { return *matrix_; }
    const SimilarityOracle& oracle() const { return oracle_; }
    Index size() const { return matrix_->rows(); }

  private:
    std::shared_ptr<const Eigen::MatrixXd> matrix_;
    SimilarityOracle oracle_;
};

}  // namespace simap
