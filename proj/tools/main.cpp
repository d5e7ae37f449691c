// simap: generate, profile, approximate, sweep, embed, extend.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "simap/approx.hpp"
#include "simap/evaluation.hpp"
#include "simap/generators.hpp"
#include "simap/linalg.hpp"
#include "simap/matrix_io.hpp"
#include "simap/rng.hpp"

namespace {

using nlohmann::json;
using simap::Index;
using simap::io::format_double;

// ---------------------------------------------------------------------------
// JSON config files: a flat object of long-option-name -> value, applied to
// the options of whichever subcommand was invoked. Values given on the
// command line always win (CLI11 only applies config values to options that
// were not passed).
class JsonConfig : public CLI::Config {
  public:
    explicit JsonConfig(const CLI::App* root) : root_(root) {}

    std::string to_config(const CLI::App*, bool, bool, std::string) const override {
        return "{}\n";
    }

    std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
        json doc;
        try {
            doc = json::parse(input);
        } catch (const json::exception& e) {
            throw CLI::FileError(std::string("config is not valid JSON: ") + e.what());
        }
        if (!doc.is_object()) throw CLI::FileError("config must be a JSON object");
        // scope the items to the subcommand that actually parsed
        std::vector<std::string> parents;
        const CLI::App* app = root_;
        while (app != nullptr) {
            const auto parsed = app->get_subcommands();
            if (parsed.empty()) break;
            parents.push_back(parsed.front()->get_name());
            app = parsed.front();
        }
        std::vector<CLI::ConfigItem> items;
        for (const auto& [key, value] : doc.items()) {
            CLI::ConfigItem item;
            item.parents = parents;
            item.name = key;
            if (value.is_array()) {
                for (const auto& element : value) item.inputs.push_back(scalar(element));
            } else {
                item.inputs.push_back(scalar(value));
            }
            items.push_back(std::move(item));
        }
        return items;
    }

  private:
    static std::string scalar(const json& v) {
        if (v.is_string()) return v.get<std::string>();
        if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
        return v.dump();
    }

    const CLI::App* root_;
};

json matrix_to_json(const Eigen::MatrixXd& m) {
    json rows = json::array();
    for (Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

Eigen::MatrixXd matrix_from_json(const json& rows, const char* what) {
    if (!rows.is_array() || rows.empty())
        throw simap::IoError(std::string(what) + ": expected a non-empty 2-D array");
    const Index nr = static_cast<Index>(rows.size());
    const Index nc = static_cast<Index>(rows[0].size());
    Eigen::MatrixXd m(nr, nc);
    for (Index i = 0; i < nr; ++i) {
        const auto& row = rows[static_cast<std::size_t>(i)];
        if (!row.is_array() || static_cast<Index>(row.size()) != nc)
            throw simap::IoError(std::string(what) + ": ragged rows");
        for (Index j = 0; j < nc; ++j) m(i, j) = row[static_cast<std::size_t>(j)].get<double>();
    }
    return m;
}

void write_text_file(const std::string& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw simap::IoError("cannot open '" + path + "' for writing");
    out << contents;
    if (!out) throw simap::IoError("error writing '" + path + "'");
}

std::vector<std::vector<double>> read_csv_rows(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw simap::IoError("cannot open '" + path + "'");
    std::vector<std::vector<double>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<double> row;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            try {
                std::size_t used = 0;
                row.push_back(std::stod(cell, &used));
                if (used != cell.size()) throw std::invalid_argument(cell);
            } catch (const std::exception&) {
                throw simap::IoError("bad value '" + cell + "' in '" + path + "'");
            }
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

// ---------------------------------------------------------------------------
// Shared options

struct CommonApproxOpts {
    std::string matrix;
    std::string method;
    Index s1 = 0;
    Index s2 = -1;  // -1 = method default
    double alpha = 1.5;
    double rcond = simap::linalg::kDefaultRcond;
    std::string shift_mode = "clamped";
    std::string sampling = "independent";
    std::uint64_t seed = 0;
};

void add_approx_options(CLI::App* sub, CommonApproxOpts& o) {
    sub->add_option("--matrix", o.matrix, "matrix file (CSV or SIMM binary)")->required();
    sub->add_option("--method", o.method,
                    "nystrom | sms | sms-rescaled | skeleton | skeleton-nested | sicur | "
                    "stacur-s | stacur-d | optimal")
        ->required();
    sub->add_option("--s1", o.s1, "landmark count (columns)")->required();
    sub->add_option("--s2", o.s2, "outer sample size (sms/skeleton; default per method)");
    sub->add_option("--alpha", o.alpha, "shift multiplier for sms (default 1.5)");
    sub->add_option("--rcond", o.rcond, "relative cutoff for pseudo-inversions");
    sub->add_option("--shift-mode", o.shift_mode, "clamped | verbatim")
        ->check(CLI::IsMember({"clamped", "verbatim"}));
    sub->add_option("--sampling", o.sampling, "skeleton sampling: independent | nested")
        ->check(CLI::IsMember({"independent", "nested"}));
    sub->add_option("--seed", o.seed, "RNG seed")->envname("SIMAP_SEED");
}

simap::evaluation::MethodOptions method_options(const CommonApproxOpts& o) {
    simap::evaluation::MethodOptions opts;
    opts.alpha = o.alpha;
    opts.rcond = o.rcond;
    opts.shift_mode =
        o.shift_mode == "verbatim" ? simap::ShiftMode::verbatim : simap::ShiftMode::clamped;
    opts.skeleton_sampling = o.sampling == "nested" ? simap::SkeletonSampling::nested
                                                    : simap::SkeletonSampling::independent;
    return opts;
}

std::optional<Index> s2_of(const CommonApproxOpts& o) {
    if (o.s2 < 0) return std::nullopt;
    return o.s2;
}

// ---------------------------------------------------------------------------
// gen

struct GenOpts {
    std::string kind;
    Index n = 0;
    std::uint64_t seed = 0;
    std::string out;
    std::string format = "auto";
    std::string profile;
    std::string values;
    Index dim = 2;
    double gamma = 1.0;
    bool analyze = false;
};

Eigen::VectorXd parse_spectrum(const GenOpts& o) {
    if (o.profile.empty() == o.values.empty())
        throw simap::ParameterError("gen planted: give exactly one of --profile / --values");
    std::vector<double> vals;
    if (!o.values.empty()) {
        std::stringstream ss(o.values);
        std::string cell;
        while (std::getline(ss, cell, ',')) vals.push_back(std::stod(cell));
    } else {
        // piecewise-uniform profile: "count:lo..hi,count:lo..hi,..."
        simap::Random rng(o.seed, simap::Stream::spectrum);
        std::stringstream ss(o.profile);
        std::string group;
        while (std::getline(ss, group, ',')) {
            const auto colon = group.find(':');
            const auto dots = group.find("..", colon == std::string::npos ? 0 : colon);
            if (colon == std::string::npos || dots == std::string::npos)
                throw simap::ParameterError("gen planted: bad profile group '" + group +
                                            "' (want count:lo..hi)");
            const long count = std::stol(group.substr(0, colon));
            const double lo = std::stod(group.substr(colon + 1, dots - colon - 1));
            const double hi = std::stod(group.substr(dots + 2));
            if (count < 0) throw simap::ParameterError("gen planted: negative count");
            for (long c = 0; c < count; ++c) vals.push_back(rng.uniform(lo, hi));
        }
    }
    if (static_cast<Index>(vals.size()) != o.n)
        throw simap::ParameterError("gen planted: spectrum has " + std::to_string(vals.size()) +
                                    " values but --n is " + std::to_string(o.n));
    return Eigen::Map<Eigen::VectorXd>(vals.data(), static_cast<Index>(vals.size()));
}

void run_gen(const GenOpts& o) {
    Eigen::MatrixXd k;
    if (o.kind == "psd") {
        k = simap::random_psd(o.n, o.seed).matrix();
    } else if (o.kind == "planted") {
        k = simap::planted_spectrum(o.n, parse_spectrum(o), o.seed).matrix();
    } else if (o.kind == "expdist") {
        simap::Random rng(o.seed, simap::Stream::points);
        Eigen::MatrixXd points(o.n, o.dim);
        for (Index i = 0; i < o.n; ++i)
            for (Index j = 0; j < o.dim; ++j) points(i, j) = rng.normal();
        const simap::SimilarityOracle oracle = simap::exp_distance_oracle(points, o.gamma);
        k = simap::gather_block(oracle, std::nullopt, std::nullopt);
    } else {
        throw simap::ParameterError("gen: unknown kind '" + o.kind +
                                    "' (want psd | planted | expdist)");
    }

    simap::io::MatrixFormat fmt = simap::io::format_for_path(o.out);
    if (o.format == "csv")
        fmt = simap::io::MatrixFormat::csv;
    else if (o.format == "bin")
        fmt = simap::io::MatrixFormat::binary;
    else if (o.format != "auto")
        throw simap::ParameterError("gen: unknown --format '" + o.format + "'");
    simap::io::save_matrix(o.out, k, fmt);

    if (o.analyze) {
        const simap::StoredOracle stored(k);
        const bool symmetric = stored.oracle().symmetric_hint();
        const Eigen::MatrixXd sym =
            symmetric ? stored.matrix() : Eigen::MatrixXd(0.5 * (k + k.transpose()));
        const auto neg = simap::evaluation::negativity_summary(sym);
        std::cout << "n: " << k.rows() << "\n"
                  << "symmetric: " << (symmetric ? "true" : "false") << "\n"
                  << "lambda_min: " << format_double(simap::linalg::min_eigenvalue(sym)) << "\n"
                  << "negative_count: " << neg.negative_count << "\n"
                  << "negative_mass_fraction: " << format_double(neg.negative_mass_fraction)
                  << "\n";
    }
}

// ---------------------------------------------------------------------------
// spectrum

struct SpectrumOpts {
    std::string matrix, out;
    Index from = 1, to = 1;
};

void run_spectrum(const SpectrumOpts& o) {
    const simap::StoredOracle stored = simap::stored_matrix_oracle(o.matrix);
    const Eigen::VectorXd profile =
        simap::evaluation::spectrum_profile(stored.matrix(), o.from, o.to);
    std::string csv = "rank,eigenvalue\n";
    for (Index r = 0; r < profile.size(); ++r)
        csv += std::to_string(o.from + r) + "," + format_double(profile(r)) + "\n";
    write_text_file(o.out, csv);
}

// ---------------------------------------------------------------------------
// histogram

struct HistogramOpts {
    std::string matrix, out, bins_out;
    Index sample = 0;
    int trials = 1;
    int bins = 50;
    std::uint64_t seed = 0;
};

void run_histogram(const HistogramOpts& o) {
    const simap::StoredOracle stored = simap::stored_matrix_oracle(o.matrix);
    const auto hist = simap::evaluation::eigen_histogram(stored.oracle(), o.sample, o.trials,
                                                         o.seed, o.bins);
    std::string csv = "trial,index,eigenvalue\n";
    for (std::size_t t = 0; t < hist.trial_values.size(); ++t)
        for (Index i = 0; i < hist.trial_values[t].size(); ++i)
            csv += std::to_string(t) + "," + std::to_string(i) + "," +
                   format_double(hist.trial_values[t](i)) + "\n";
    write_text_file(o.out, csv);

    std::string bins = "bin_lo,bin_hi,count\n";
    for (int b = 0; b < hist.bin_counts.size(); ++b)
        bins += format_double(hist.bin_edges(b)) + "," + format_double(hist.bin_edges(b + 1)) +
                "," + std::to_string(hist.bin_counts(b)) + "\n";
    std::string bins_path = o.bins_out;
    if (bins_path.empty()) {
        std::filesystem::path p(o.out);
        const std::string ext = p.extension().string();
        p.replace_extension();
        bins_path = p.string() + ".bins" + (ext.empty() ? ".csv" : ext);
    }
    write_text_file(bins_path, bins);
}

// ---------------------------------------------------------------------------
// approx

struct ApproxOpts : CommonApproxOpts {
    std::string report;
    std::string out_factor;
    bool timing = false;
};

json factor_to_json(const simap::evaluation::FactorVariant& factor) {
    json doc;
    if (const auto* nf = std::get_if<simap::NystromFactor>(&factor)) {
        doc["type"] = "nystrom";
        doc["landmarks"] = nf->landmarks.indices();
        doc["shift"] = nf->shift;
        doc["alpha"] = nf->alpha;
        doc["beta"] = nf->rescale_beta;
        doc["signs"] =
            std::vector<double>(nf->signs.data(), nf->signs.data() + nf->signs.size());
        doc["z"] = matrix_to_json(nf->z);
        doc["inner_root"] = matrix_to_json(nf->inner_root);
    } else if (const auto* cf = std::get_if<simap::CURFactor>(&factor)) {
        doc["type"] = "cur";
        doc["method"] = simap::to_string(cf->method);
        doc["col_landmarks"] = cf->col_landmarks.indices();
        doc["row_landmarks"] = cf->row_landmarks.indices();
        doc["c"] = matrix_to_json(cf->c);
        doc["u"] = matrix_to_json(cf->u);
        doc["r"] = matrix_to_json(cf->r);
    } else if (const auto* rk = std::get_if<simap::linalg::RankKApprox>(&factor)) {
        doc["type"] = "optimal";
        doc["values"] =
            std::vector<double>(rk->values.data(), rk->values.data() + rk->values.size());
        doc["vectors"] = matrix_to_json(rk->vectors);
    }
    return doc;
}

void run_approx(const ApproxOpts& o) {
    const simap::StoredOracle stored = simap::stored_matrix_oracle(o.matrix);
    const auto run = simap::evaluation::run_method(stored, o.method, o.s1, s2_of(o), o.seed,
                                                   method_options(o));
    const auto& r = run.report;
    std::string csv = "method,s1,s2,alpha,seed,rel_fro_error,oracle_calls,wall_time\n";
    csv += r.method + "," + std::to_string(r.s1) + "," + std::to_string(r.s2) + "," +
           format_double(r.alpha) + "," + std::to_string(r.seed) + "," +
           format_double(r.rel_fro_error) + "," + std::to_string(r.oracle_calls) + "," +
           format_double(o.timing ? r.wall_time : 0.0) + "\n";
    write_text_file(o.report, csv);
    if (!o.out_factor.empty())
        write_text_file(o.out_factor, factor_to_json(run.factor).dump());
    std::cerr << o.method << ": rel_fro_error=" << format_double(r.rel_fro_error)
              << " oracle_calls=" << r.oracle_calls
              << " wall_time=" << format_double(r.wall_time) << "s\n";
}

// ---------------------------------------------------------------------------
// sweep

struct SweepOpts {
    std::string matrix, out;
    std::vector<std::string> methods;
    std::vector<double> fractions;
    int trials = 10;
    int threads = 0;
    double alpha = 1.5;
    double rcond = simap::linalg::kDefaultRcond;
    std::uint64_t seed = 0;
};

void run_sweep(const SweepOpts& o) {
    const simap::StoredOracle stored = simap::stored_matrix_oracle(o.matrix);
    simap::evaluation::SweepOptions opts;
    opts.alpha = o.alpha;
    opts.rcond = o.rcond;
    opts.threads = o.threads;
    const auto rows =
        simap::evaluation::error_sweep(stored, o.methods, o.fractions, o.trials, o.seed, opts);
    std::string csv = "method,fraction,s1,s2,mean_err,std_err,mean_calls\n";
    for (const auto& row : rows)
        csv += row.method + "," + format_double(row.fraction) + "," + std::to_string(row.s1) +
               "," + std::to_string(row.s2) + "," + format_double(row.mean_err) + "," +
               format_double(row.std_err) + "," + format_double(row.mean_calls) + "\n";
    write_text_file(o.out, csv);
}

// ---------------------------------------------------------------------------
// embed / extend

struct EmbedOpts : CommonApproxOpts {
    std::string out;
    std::string landmarks;
};

std::string embedding_csv(const Eigen::MatrixXd& e) {
    std::string csv;
    for (Index i = 0; i < e.rows(); ++i) {
        csv += std::to_string(i);
        for (Index j = 0; j < e.cols(); ++j) csv += "," + format_double(e(i, j));
        csv += "\n";
    }
    return csv;
}

void run_embed(const EmbedOpts& o) {
    if (o.method == "optimal")
        throw simap::ParameterError("embed: 'optimal' has no landmark embedding");
    const simap::StoredOracle stored = simap::stored_matrix_oracle(o.matrix);
    const auto run = simap::evaluation::run_method(stored, o.method, o.s1, s2_of(o), o.seed,
                                                   method_options(o));
    Eigen::MatrixXd embedding;
    json lm;
    lm["method"] = o.method;
    lm["n"] = stored.size();
    if (const auto* nf = std::get_if<simap::NystromFactor>(&run.factor)) {
        embedding = simap::embed_nystrom(*nf);  // indefinite factors fail here
        lm["indices"] = nf->landmarks.indices();
        lm["shift"] = nf->shift;
        lm["alpha"] = nf->alpha;
        lm["beta"] = nf->rescale_beta;
        lm["inner_root"] = matrix_to_json(nf->inner_root);
    } else {
        const auto& cf = std::get<simap::CURFactor>(run.factor);
        const Eigen::MatrixXd ext = simap::extension_matrix(cf, o.rcond);
        embedding = cf.c * ext;
        lm["indices"] = cf.col_landmarks.indices();
        lm["shift"] = 0.0;
        lm["alpha"] = 0.0;
        lm["beta"] = 1.0;
        lm["inner_root"] = matrix_to_json(ext);
    }
    write_text_file(o.out, embedding_csv(embedding));
    write_text_file(o.landmarks, lm.dump());
}

struct ExtendOpts {
    std::string landmarks, similarities, out;
    bool landmark_col = false;
};

void run_extend(const ExtendOpts& o) {
    std::ifstream in(o.landmarks);
    if (!in) throw simap::IoError("cannot open '" + o.landmarks + "'");
    json lm;
    try {
        lm = json::parse(in);
    } catch (const json::exception& e) {
        throw simap::IoError("bad landmark file: " + std::string(e.what()));
    }
    const Index n = lm.at("n").get<Index>();
    const std::vector<Index> indices = lm.at("indices").get<std::vector<Index>>();
    simap::NystromFactor factor;
    factor.landmarks = simap::IndexSample(indices, n);
    factor.inner_root = matrix_from_json(lm.at("inner_root"), "landmark inner_root");
    factor.shift = lm.at("shift").get<double>();
    factor.alpha = lm.value("alpha", 1.0);
    factor.rescale_beta = lm.value("beta", 1.0);
    factor.signs = Eigen::VectorXd::Ones(factor.inner_root.cols());
    factor.z = Eigen::MatrixXd(0, factor.inner_root.cols());
    if (static_cast<Index>(indices.size()) != factor.inner_root.rows())
        throw simap::IoError("landmark file: indices/inner_root size mismatch");

    const Index s1 = factor.landmarks.size();
    const auto rows = read_csv_rows(o.similarities);
    std::string csv;
    for (std::size_t r = 0; r < rows.size(); ++r) {
        const auto& row = rows[r];
        const std::size_t expected = static_cast<std::size_t>(s1) + (o.landmark_col ? 1 : 0);
        if (row.size() != expected)
            throw simap::ParameterError("extend: row " + std::to_string(r) + " has " +
                                        std::to_string(row.size()) + " values, expected " +
                                        std::to_string(expected));
        std::optional<Index> slot;
        std::size_t offset = 0;
        if (o.landmark_col) {
            const auto tag = static_cast<Index>(row[0]);
            if (tag >= 0) slot = tag;
            offset = 1;
        }
        Eigen::VectorXd sims(s1);
        for (Index j = 0; j < s1; ++j) sims(j) = row[offset + static_cast<std::size_t>(j)];
        const Eigen::VectorXd emb = simap::extend_embedding(factor, sims, slot);
        csv += std::to_string(r);
        for (Index j = 0; j < emb.size(); ++j) csv += "," + format_double(emb(j));
        csv += "\n";
    }
    write_text_file(o.out, csv);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "simap: sublinear similarity-matrix approximation (SMS-Nystrom and CUR family)"};
    app.require_subcommand(1);
    app.fallthrough();
    app.config_formatter(std::make_shared<JsonConfig>(&app));
    app.set_config("--config", "", "JSON config file; explicit flags override it");

    GenOpts gen;
    CLI::App* gen_cmd = app.add_subcommand("gen", "generate a synthetic similarity matrix");
    gen_cmd->add_option("kind", gen.kind, "psd | planted | expdist")->required();
    gen_cmd->add_option("--n", gen.n, "matrix size")->required();
    gen_cmd->add_option("--seed", gen.seed, "RNG seed")->envname("SIMAP_SEED");
    gen_cmd->add_option("--out", gen.out, "output matrix file")->required();
    gen_cmd->add_option("--format", gen.format, "csv | bin | auto (by extension)");
    gen_cmd->add_option("--profile", gen.profile,
                        "planted spectrum profile: count:lo..hi[,count:lo..hi...]");
    gen_cmd->add_option("--values", gen.values, "planted spectrum as explicit comma list");
    gen_cmd->add_option("--dim", gen.dim, "point dimension for expdist (default 2)");
    gen_cmd->add_option("--gamma", gen.gamma, "decay rate for expdist (default 1.0)");
    gen_cmd->add_flag("--analyze", gen.analyze, "print n, symmetry and lambda_min summary");
    gen_cmd->callback([&] { run_gen(gen); });

    SpectrumOpts spectrum;
    CLI::App* spectrum_cmd =
        app.add_subcommand("spectrum", "eigenvalues by descending magnitude, sliced by rank");
    spectrum_cmd->add_option("--matrix", spectrum.matrix, "matrix file")->required();
    spectrum_cmd->add_option("--from", spectrum.from, "first rank (1-indexed)")->required();
    spectrum_cmd->add_option("--to", spectrum.to, "last rank (inclusive)")->required();
    spectrum_cmd->add_option("--out", spectrum.out, "output CSV (rank,eigenvalue)")->required();
    spectrum_cmd->callback([&] { run_spectrum(spectrum); });

    HistogramOpts histogram;
    CLI::App* histogram_cmd = app.add_subcommand(
        "histogram", "pooled spectra of repeatedly sampled principal submatrices");
    histogram_cmd->add_option("--matrix", histogram.matrix, "matrix file")->required();
    histogram_cmd->add_option("--sample", histogram.sample, "submatrix size")->required();
    histogram_cmd->add_option("--trials", histogram.trials, "number of samples")->required();
    histogram_cmd->add_option("--seed", histogram.seed, "RNG seed")->envname("SIMAP_SEED");
    histogram_cmd->add_option("--bins", histogram.bins, "histogram bins (default 50)");
    histogram_cmd->add_option("--out", histogram.out, "output CSV (trial,index,eigenvalue)")
        ->required();
    histogram_cmd->add_option("--bins-out", histogram.bins_out,
                              "binned summary CSV (default: <out>.bins.<ext>)");
    histogram_cmd->callback([&] { run_histogram(histogram); });

    ApproxOpts approx;
    CLI::App* approx_cmd =
        app.add_subcommand("approx", "run one approximation and report its exact error");
    add_approx_options(approx_cmd, approx);
    approx_cmd->add_option("--report", approx.report, "output CSV report row")->required();
    approx_cmd->add_option("--out-factor", approx.out_factor, "optional factor JSON");
    approx_cmd->add_flag("--timing", approx.timing,
                         "write measured wall time into the report (non-reproducible)");
    approx_cmd->callback([&] { run_approx(approx); });

    SweepOpts sweep;
    CLI::App* sweep_cmd =
        app.add_subcommand("sweep", "error vs sample-fraction sweep over methods");
    sweep_cmd->add_option("--matrix", sweep.matrix, "matrix file")->required();
    sweep_cmd->add_option("--methods", sweep.methods, "comma-separated method list")
        ->required()
        ->delimiter(',');
    sweep_cmd->add_option("--fractions", sweep.fractions, "comma-separated s/n values")
        ->required()
        ->delimiter(',');
    sweep_cmd->add_option("--trials", sweep.trials, "trials per cell (default 10)");
    sweep_cmd->add_option("--seed", sweep.seed, "base seed; trial t uses seed+t")
        ->envname("SIMAP_SEED");
    sweep_cmd->add_option("--alpha", sweep.alpha, "sms shift multiplier (default 1.5)");
    sweep_cmd->add_option("--rcond", sweep.rcond, "relative pseudo-inversion cutoff");
    sweep_cmd->add_option("--threads", sweep.threads,
                          "worker threads (default: machine parallelism)");
    sweep_cmd->add_option("--out", sweep.out, "output CSV")->required();
    sweep_cmd->callback([&] { run_sweep(sweep); });

    EmbedOpts embed;
    CLI::App* embed_cmd =
        app.add_subcommand("embed", "write point embeddings and a landmark file");
    add_approx_options(embed_cmd, embed);
    embed_cmd->add_option("--out", embed.out, "embedding CSV (index,v0,v1,...)")->required();
    embed_cmd->add_option("--landmarks", embed.landmarks, "landmark JSON for cmd extend")
        ->required();
    embed_cmd->callback([&] { run_embed(embed); });

    ExtendOpts extend;
    CLI::App* extend_cmd = app.add_subcommand(
        "extend", "embed out-of-sample points from similarities to the landmarks");
    extend_cmd->add_option("--landmarks", extend.landmarks, "landmark JSON from embed")
        ->required();
    extend_cmd->add_option("--similarities", extend.similarities,
                           "CSV of new-point-to-landmark similarity rows")
        ->required();
    extend_cmd->add_option("--out", extend.out, "output embedding CSV")->required();
    extend_cmd->add_flag("--landmark-col", extend.landmark_col,
                         "first CSV column is the landmark slot of the row (-1 for none)");
    extend_cmd->callback([&] { run_extend(extend); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const simap::ParameterError& e) {
        std::cerr << "parameter error: " << e.what() << "\n";
        return 2;
    } catch (const simap::IoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return 3;
    } catch (const simap::NumericError& e) {
        std::cerr << "numeric error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
