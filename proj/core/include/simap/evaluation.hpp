#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "simap/approx.hpp"
#include "simap/oracle.hpp"

namespace simap::evaluation {

/// ||K - K~||_F / ||K||_F.
double rel_fro_error(const Eigen::MatrixXd& k, const Eigen::MatrixXd& approx);
double rel_fro_error(const Eigen::MatrixXd& k, const NystromFactor& factor);
double rel_fro_error(const Eigen::MatrixXd& k, const CURFactor& factor);

struct ErrorReport {
    std::string method;
    Index s1 = 0;
    Index s2 = 0;
    double alpha = 0.0;
    std::uint64_t seed = 0;
    double rel_fro_error = 0.0;
    std::size_t oracle_calls = 0;  // distinct evaluated pairs
    double wall_time = 0.0;        // seconds spent building the factor
};

struct MethodOptions {
    double alpha = 1.5;
    double rcond = linalg::kDefaultRcond;
    ShiftMode shift_mode = ShiftMode::clamped;
    SkeletonSampling skeleton_sampling = SkeletonSampling::independent;
};

using FactorVariant =
    std::variant<std::monostate, NystromFactor, CURFactor, linalg::RankKApprox>;

struct MethodRun {
    ErrorReport report;
    FactorVariant factor;
};

/// Method tokens: nystrom, sms, sms-rescaled, skeleton, skeleton-nested,
/// sicur, stacur-s, stacur-d, optimal.
bool is_known_method(const std::string& token);

/// Run one method against a stored oracle through a counting wrapper and
/// measure the exact relative error. Asymmetric sources are symmetrized
/// first and the error is measured against the symmetrized matrix. s2 is
/// method-specific: default 2*s1 (capped at n) for sms, s1 for skeleton
/// variants; ignored by nystrom/sicur/stacur/optimal.
MethodRun run_method(const StoredOracle& oracle, const std::string& method, Index s1,
                     std::optional<Index> s2, std::uint64_t seed,
                     const MethodOptions& opts = {});

struct SweepRow {
    std::string method;
    double fraction = 0.0;
    Index s1 = 0;
    Index s2 = 0;
    double mean_err = 0.0;
    double std_err = 0.0;   // sample standard deviation (n-1)
    double mean_calls = 0.0;
};

struct SweepOptions : MethodOptions {
    int threads = 0;  // 0 = machine parallelism
};

/// Error-vs-sample-fraction sweep: for each (method, fraction) runs `trials`
/// seeded runs (seed = base_seed + trial) and aggregates. The fraction fixes
/// s1 (= round(f*n)) for every method except sicur, where it fixes s2 and
/// s1 = s2/2. Rows come out in input order regardless of thread count.
std::vector<SweepRow> error_sweep(const StoredOracle& oracle,
                                  const std::vector<std::string>& methods,
                                  const std::vector<double>& fractions, int trials,
                                  std::uint64_t base_seed, const SweepOptions& opts = {});

struct EigenHistogram {
    std::vector<Eigen::VectorXd> trial_values;  // ascending within each trial
    Eigen::VectorXd bin_edges;                  // bins + 1 edges over the pooled range
    Eigen::VectorXi bin_counts;
};

/// Pooled spectra of `trials` independently sampled principal submatrices
/// S^T K S (sample seeds seed + t), plus a binned summary.
EigenHistogram eigen_histogram(const SimilarityOracle& oracle, Index sample_size,
                               int trials, std::uint64_t seed, int bins);

/// Signed eigenvalues sorted by descending magnitude, sliced to the
/// 1-indexed rank range [from_rank, to_rank].
Eigen::VectorXd spectrum_profile(const Eigen::MatrixXd& k, Index from_rank, Index to_rank);

struct NegativitySummary {
    Index negative_count = 0;
    double negative_mass_fraction = 0.0;  // sum|lambda_-| / sum|lambda|
};

NegativitySummary negativity_summary(const Eigen::MatrixXd& k);

}  // namespace simap::evaluation
