#include "simap/evaluation.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <thread>

#include "simap/generators.hpp"

namespace simap::evaluation {

double rel_fro_error(const Eigen::MatrixXd& k, const Eigen::MatrixXd& approx) {
    if (k.rows() != approx.rows() || k.cols() != approx.cols())
        throw ParameterError("rel_fro_error: shape mismatch");
    const double denom = k.norm();
    if (denom == 0.0) throw ParameterError("rel_fro_error: ||K||_F is zero, metric undefined");
    return (k - approx).norm() / denom;
}

double rel_fro_error(const Eigen::MatrixXd& k, const NystromFactor& factor) {
    return rel_fro_error(k, reconstruct_full(factor));
}

double rel_fro_error(const Eigen::MatrixXd& k, const CURFactor& factor) {
    return rel_fro_error(k, reconstruct_full(factor));
}

namespace {

const std::vector<std::string>& method_tokens() {
    static const std::vector<std::string> tokens = {
        "nystrom", "sms",      "sms-rescaled", "skeleton", "skeleton-nested",
        "sicur",   "stacur-s", "stacur-d",     "optimal"};
    return tokens;
}

struct Sizes {
    Index s1;
    Index s2;
};

Sizes resolve_sizes(const std::string& method, Index s1, std::optional<Index> s2, Index n) {
    if (method == "sms" || method == "sms-rescaled")
        return {s1, s2 ? *s2 : std::min<Index>(2 * s1, n)};
    if (method == "skeleton" || method == "skeleton-nested") return {s1, s2 ? *s2 : s1};
    if (method == "sicur") return {s1, 2 * s1};
    return {s1, s1};  // nystrom, stacur-s, stacur-d, optimal
}

}  // namespace

bool is_known_method(const std::string& token) {
    const auto& tokens = method_tokens();
    return std::find(tokens.begin(), tokens.end(), token) != tokens.end();
}

MethodRun run_method(const StoredOracle& oracle, const std::string& method, Index s1,
                     std::optional<Index> s2, std::uint64_t seed, const MethodOptions& opts) {
    if (!is_known_method(method)) throw ParameterError("unknown method '" + method + "'");
    const Index n = oracle.size();
    const bool symmetric = oracle.oracle().symmetric_hint();
    // asymmetric sources are symmetrized before approximation, and the error
    // is measured against the symmetrized matrix
    const SimilarityOracle base =
        symmetric ? oracle.oracle() : symmetrize_oracle(oracle.oracle());
    Eigen::MatrixXd reference;
    if (symmetric)
        reference = oracle.matrix();
    else
        reference = 0.5 * (oracle.matrix() + oracle.matrix().transpose());

    const Sizes sizes = resolve_sizes(method, s1, s2, n);
    CountingOracle counter(base);

    MethodRun run;
    run.report.method = method;
    run.report.s1 = sizes.s1;
    run.report.s2 = sizes.s2;
    run.report.alpha = (method == "sms" || method == "sms-rescaled") ? opts.alpha : 0.0;
    run.report.seed = seed;

    const auto t0 = std::chrono::steady_clock::now();
    if (method == "nystrom") {
        run.factor = classic_nystrom(counter.oracle(), sizes.s1, seed, opts.rcond);
    } else if (method == "sms" || method == "sms-rescaled") {
        run.factor = sms_nystrom(counter.oracle(), sizes.s1, sizes.s2, opts.alpha, seed,
                                 opts.rcond, opts.shift_mode, method == "sms-rescaled");
    } else if (method == "skeleton") {
        run.factor = skeleton(counter.oracle(), sizes.s1, sizes.s2, opts.skeleton_sampling,
                              seed, opts.rcond);
    } else if (method == "skeleton-nested") {
        run.factor = skeleton(counter.oracle(), sizes.s1, sizes.s2, SkeletonSampling::nested,
                              seed, opts.rcond);
    } else if (method == "sicur") {
        run.factor = sicur(counter.oracle(), sizes.s1, seed, opts.rcond);
    } else if (method == "stacur-s") {
        run.factor = stacur(counter.oracle(), sizes.s1, StacurVariant::shared, seed, opts.rcond);
    } else if (method == "stacur-d") {
        run.factor = stacur(counter.oracle(), sizes.s1, StacurVariant::distinct, seed,
                            opts.rcond);
    } else {  // optimal: the deliberately-dense baseline
        run.factor = linalg::optimal_rank_k(reference, sizes.s1);
    }
    const auto t1 = std::chrono::steady_clock::now();
    run.report.wall_time = std::chrono::duration<double>(t1 - t0).count();

    if (std::holds_alternative<NystromFactor>(run.factor)) {
        run.report.rel_fro_error = rel_fro_error(reference, std::get<NystromFactor>(run.factor));
        run.report.oracle_calls = counter.calls();
    } else if (std::holds_alternative<CURFactor>(run.factor)) {
        run.report.rel_fro_error = rel_fro_error(reference, std::get<CURFactor>(run.factor));
        run.report.oracle_calls = counter.calls();
    } else {
        run.report.rel_fro_error =
            rel_fro_error(reference, std::get<linalg::RankKApprox>(run.factor).materialize());
        // the SVD baseline reads the whole matrix
        run.report.oracle_calls =
            static_cast<std::size_t>(n) * static_cast<std::size_t>(n + 1) / 2;
    }
    return run;
}

std::vector<SweepRow> error_sweep(const StoredOracle& oracle,
                                  const std::vector<std::string>& methods,
                                  const std::vector<double>& fractions, int trials,
                                  std::uint64_t base_seed, const SweepOptions& opts) {
    if (trials < 1) throw ParameterError("error_sweep: trials must be >= 1");
    if (methods.empty()) throw ParameterError("error_sweep: no methods given");
    if (fractions.empty()) throw ParameterError("error_sweep: no fractions given");
    const Index n = oracle.size();

    struct Cell {
        std::string method;
        double fraction;
        Index s1;
        std::optional<Index> s2;
    };
    std::vector<Cell> cells;
    for (const auto& method : methods) {
        if (!is_known_method(method))
            throw ParameterError("error_sweep: unknown method '" + method + "'");
        for (double fraction : fractions) {
            const Index s = static_cast<Index>(std::llround(fraction * static_cast<double>(n)));
            if (s < 1 || s > n)
                throw ParameterError("error_sweep: fraction " + std::to_string(fraction) +
                                     " yields sample size " + std::to_string(s));
            Cell cell{method, fraction, s, std::nullopt};
            if (method == "sicur") {
                // the paper's axis convention: the fraction fixes s2
                cell.s1 = s / 2;
                if (cell.s1 < 1)
                    throw ParameterError("error_sweep: fraction " + std::to_string(fraction) +
                                         " yields s1 < 1 for sicur");
            }
            cells.push_back(std::move(cell));
        }
    }

    struct TrialResult {
        double err = 0.0;
        double calls = 0.0;
        Index s1 = 0;
        Index s2 = 0;
    };
    std::vector<TrialResult> results(cells.size() * static_cast<std::size_t>(trials));

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&]() {
        for (;;) {
            const std::size_t task = next.fetch_add(1);
            if (task >= results.size()) return;
            {
                std::lock_guard<std::mutex> lock(failure_mutex);
                if (failure) return;
            }
            const Cell& cell = cells[task / static_cast<std::size_t>(trials)];
            const int trial = static_cast<int>(task % static_cast<std::size_t>(trials));
            try {
                const MethodRun run =
                    run_method(oracle, cell.method, cell.s1, cell.s2,
                               base_seed + static_cast<std::uint64_t>(trial), opts);
                results[task] = {run.report.rel_fro_error,
                                 static_cast<double>(run.report.oracle_calls), run.report.s1,
                                 run.report.s2};
            } catch (...) {
                std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                return;
            }
        }
    };

    unsigned thread_count = opts.threads > 0 ? static_cast<unsigned>(opts.threads)
                                             : std::thread::hardware_concurrency();
    thread_count = std::max(1u, std::min<unsigned>(thread_count,
                                                   static_cast<unsigned>(results.size())));
    if (thread_count == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(thread_count);
        for (unsigned t = 0; t < thread_count; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    if (failure) std::rethrow_exception(failure);

    std::vector<SweepRow> rows;
    rows.reserve(cells.size());
    for (std::size_t c = 0; c < cells.size(); ++c) {
        const TrialResult* first = &results[c * static_cast<std::size_t>(trials)];
        SweepRow row;
        row.method = cells[c].method;
        row.fraction = cells[c].fraction;
        row.s1 = first->s1;
        row.s2 = first->s2;
        double sum = 0.0, sum_calls = 0.0;
        for (int t = 0; t < trials; ++t) {
            sum += first[t].err;
            sum_calls += first[t].calls;
        }
        row.mean_err = sum / trials;
        row.mean_calls = sum_calls / trials;
        double ss = 0.0;
        for (int t = 0; t < trials; ++t) {
            const double d = first[t].err - row.mean_err;
            ss += d * d;
        }
        row.std_err = trials > 1 ? std::sqrt(ss / (trials - 1)) : 0.0;
        rows.push_back(std::move(row));
    }
    return rows;
}

EigenHistogram eigen_histogram(const SimilarityOracle& oracle, Index sample_size, int trials,
                               std::uint64_t seed, int bins) {
    if (sample_size < 1 || sample_size > oracle.size())
        throw ParameterError("eigen_histogram: need 1 <= sample_size <= n");
    if (trials < 1) throw ParameterError("eigen_histogram: trials must be >= 1");
    if (bins < 1) throw ParameterError("eigen_histogram: bins must be >= 1");

    EigenHistogram out;
    out.trial_values.reserve(static_cast<std::size_t>(trials));
    for (int t = 0; t < trials; ++t) {
        const IndexSample sample =
            sample_uniform(oracle.size(), sample_size, seed + static_cast<std::uint64_t>(t));
        const Eigen::MatrixXd block = gather_block(oracle, sample, sample);
        out.trial_values.push_back(linalg::sym_eig(block).values);
    }

    double lo = out.trial_values.front().minCoeff();
    double hi = out.trial_values.front().maxCoeff();
    for (const auto& v : out.trial_values) {
        lo = std::min(lo, v.minCoeff());
        hi = std::max(hi, v.maxCoeff());
    }
    if (hi <= lo) hi = lo + 1.0;  // degenerate pooled range
    out.bin_edges.resize(bins + 1);
    for (int b = 0; b <= bins; ++b)
        out.bin_edges(b) = lo + (hi - lo) * static_cast<double>(b) / bins;
    out.bin_counts = Eigen::VectorXi::Zero(bins);
    for (const auto& v : out.trial_values)
        for (Index i = 0; i < v.size(); ++i) {
            int b = static_cast<int>(static_cast<double>(bins) * (v(i) - lo) / (hi - lo));
            b = std::clamp(b, 0, bins - 1);
            out.bin_counts(b) += 1;
        }
    return out;
}

Eigen::VectorXd spectrum_profile(const Eigen::MatrixXd& k, Index from_rank, Index to_rank) {
    if (from_rank < 1 || from_rank > to_rank || to_rank > k.rows())
        throw ParameterError("spectrum_profile: need 1 <= from <= to <= n");
    const Eigen::VectorXd values = linalg::sym_eig(k).values;
    const std::vector<Index> order = linalg::magnitude_order(values);
    Eigen::VectorXd out(to_rank - from_rank + 1);
    for (Index r = from_rank; r <= to_rank; ++r)
        out(r - from_rank) = values(order[static_cast<std::size_t>(r - 1)]);
    return out;
}

NegativitySummary negativity_summary(const Eigen::MatrixXd& k) {
    const Eigen::VectorXd values = linalg::sym_eig(k).values;
    NegativitySummary out;
    double neg_mass = 0.0, total_mass = 0.0;
    for (Index i = 0; i < values.size(); ++i) {
        total_mass += std::abs(values(i));
        if (values(i) < 0.0) {
            ++out.negative_count;
            neg_mass += -values(i);
        }
    }
    out.negative_mass_fraction = total_mass > 0.0 ? neg_mass / total_mass : 0.0;
    return out;
}

}  // namespace simap::evaluation
