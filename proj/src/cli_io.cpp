#include "sepqr/cli_io.hpp"

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "sepqr/diagnostics.hpp"
#include "sepqr/gam.hpp"
#include "sepqr/simulation.hpp"

namespace sepqr {

namespace {

std::string trim(const std::string& text) {
    const auto begin = text.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return "";
    const auto end = text.find_last_not_of(" \t\r\n");
    return text.substr(begin, end - begin + 1);
}

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::string::size_type start = 0;
    while (true) {
        const auto pos = text.find(sep, start);
        if (pos == std::string::npos) {
            parts.push_back(trim(text.substr(start)));
            break;
        }
        parts.push_back(trim(text.substr(start, pos - start)));
        start = pos + 1;
    }
    return parts;
}

double parse_config_double(const std::string& value, const std::string& key) {
    const std::string v = trim(value);
    errno = 0;
    char* end = nullptr;
    const double out = std::strtod(v.c_str(), &end);
    if (v.empty() || end != v.c_str() + v.size() || errno == ERANGE) {
        throw usage_error("config: cannot parse '" + value + "' as a number for " + key);
    }
    return out;
}

long parse_config_long(const std::string& value, const std::string& key) {
    const double d = parse_config_double(value, key);
    const long out = static_cast<long>(d);
    if (static_cast<double>(out) != d) {
        throw usage_error("config: " + key + " must be an integer, got '" + value + "'");
    }
    return out;
}

bool parse_config_bool(const std::string& value, const std::string& key) {
    const std::string v = trim(value);
    if (v == "true" || v == "1") return true;
    if (v == "false" || v == "0") return false;
    throw usage_error("config: " + key + " must be true or false, got '" + value + "'");
}

std::string format_tau(double tau) {
    char buffer[32];
    std::snprintf(buffer, sizeof(buffer), "%g", tau);
    return buffer;
}

// Removes every tracked file unless the command committed, so a failed run
// leaves no partial outputs behind.
class OutputGuard {
public:
    ~OutputGuard() {
        if (committed_) return;
        for (const std::string& path : paths_) std::remove(path.c_str());
    }
    void track(const std::string& path) { paths_.push_back(path); }
    void commit() { committed_ = true; }

private:
    std::vector<std::string> paths_;
    bool committed_ = false;
};

void ensure_output_dir(const std::string& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw data_error("cannot create output directory '" + dir + "': " + ec.message());
}

void write_summary_csv(const std::string& path, const std::vector<ParameterSummary>& rows) {
    std::vector<std::vector<std::string>> cells;
    cells.reserve(rows.size());
    for (const ParameterSummary& row : rows) {
        cells.push_back({row.name, format_double(row.mean), format_double(row.sd),
                         format_double(row.hpd_low), format_double(row.hpd_high),
                         format_double(row.ess)});
    }
    write_cells_csv(path, {"parameter", "mean", "sd", "hpd_low", "hpd_high", "ess"}, cells);
}

void write_draws_csv(const std::string& path, const PosteriorDraws& draws) {
    std::vector<std::string> header{"iteration"};
    header.insert(header.end(), draws.parameter_names.begin(), draws.parameter_names.end());
    header.push_back("log_likelihood");
    const Eigen::Index m = draws.samples.rows();
    const Eigen::Index p = draws.samples.cols();
    Eigen::MatrixXd out(m, p + 2);
    for (Eigen::Index i = 0; i < m; ++i) {
        out(i, 0) = static_cast<double>(draws.burn_in + i + 1);
    }
    out.middleCols(1, p) = draws.samples;
    out.col(p + 1) = draws.log_likelihood;
    write_matrix_csv(path, header, out);
}

Eigen::MatrixXd build_design(const CsvTable& table, const RunConfig& config,
                             Eigen::Index rows) {
    const Eigen::Index extra = config.intercept ? 1 : 0;
    Eigen::MatrixXd design(rows, static_cast<Eigen::Index>(config.covariates.size()) + extra);
    if (config.intercept) design.col(0) = Eigen::VectorXd::Ones(rows);
    for (std::size_t j = 0; j < config.covariates.size(); ++j) {
        design.col(extra + static_cast<Eigen::Index>(j)) =
            table.numeric_column(config.covariates[j]);
    }
    return design;
}

void run_fit(const RunConfig& config) {
    const CsvTable table = read_csv(config.input_csv);
    const Eigen::VectorXd y = table.numeric_column(config.response);
    const Eigen::MatrixXd design = build_design(table, config, y.size());

    ensure_output_dir(config.output_dir);
    OutputGuard guard;
    for (std::size_t ti = 0; ti < config.taus.size(); ++ti) {
        const double tau = config.taus[ti];
        PosteriorDraws draws;
        if (config.command == "fit-linear") {
            LinearModelSpec spec;
            spec.x = design;
            spec.y = y;
            spec.tau = tau;
            spec.prior = config.prior;
            spec.sampler.iterations = config.iterations;
            spec.sampler.burn_in = config.burn_in;
            spec.sampler.seed = substream_seed(config.seed, ti);
            spec.sampler.fixed_alpha = config.fixed_alpha;
            draws = run_linear_sampler(spec);
        } else {
            GamModelSpec spec;
            spec.x = design;
            spec.y = y;
            spec.tau = tau;
            spec.prior = config.prior;
            for (const SmoothTermConfig& term : config.smooths) {
                SmoothSpec smooth;
                smooth.z = table.numeric_column(term.column);
                smooth.interior_knots = term.knots;
                smooth.order = term.order;
                smooth.delta = term.delta;
                smooth.name = term.column;
                spec.smooths.push_back(smooth);
            }
            spec.sampler.iterations = config.iterations;
            spec.sampler.burn_in = config.burn_in;
            spec.sampler.seed = substream_seed(config.seed, ti);
            spec.sampler.fixed_alpha = config.fixed_alpha;
            draws = run_gam_sampler(spec);
        }

        const std::string tag = format_tau(tau);
        const std::string draws_path = config.output_dir + "/draws_tau" + tag + ".csv";
        guard.track(draws_path);
        write_draws_csv(draws_path, draws);
        const std::string summary_path = config.output_dir + "/summary_tau" + tag + ".csv";
        guard.track(summary_path);
        write_summary_csv(summary_path, summarize(draws));
        std::cout << "wrote " << draws_path << " and " << summary_path << "\n";
    }
    guard.commit();
}

ErrorKind regression_noise_kind(const std::string& noise) {
    if (noise == "gaussian") return ErrorKind::gaussian;
    return ErrorKind::generalized_student_t;
}

NoiseKind curve_noise_kind(const std::string& noise) {
    if (noise == "gaussian") return NoiseKind::gaussian;
    if (noise == "student_t") return NoiseKind::student_t;
    if (noise == "linear_het") return NoiseKind::linear_het;
    return NoiseKind::quad_het;
}

void run_simulate(const RunConfig& config) {
    ensure_output_dir(config.output_dir);
    ExperimentConfig ec;
    ec.iterations = config.iterations;
    ec.burn_in = config.burn_in;

    std::vector<std::string> header;
    std::vector<std::vector<std::string>> cells;
    if (config.experiment == "mixture") {
        ec.seed = config.seed;
        MixtureSpec spec;
        const auto rows = run_mixture_experiment(spec, config.taus, config.replicates, ec);
        header = {"dataset", "tau", "model", "intercept", "slope", "sigma", "alpha"};
        for (const MixtureRow& row : rows) {
            cells.push_back({std::to_string(row.dataset), format_double(row.tau), row.model,
                             format_double(row.intercept), format_double(row.slope),
                             format_double(row.sigma), format_double(row.alpha)});
        }
    } else if (config.experiment == "sim1" || config.experiment == "sim2" ||
               config.experiment == "sim3") {
        RegressionSimSpec spec;
        spec.sim_id = config.experiment.back() - '0';
        spec.error_kind = regression_noise_kind(config.noise);
        spec.replicates = config.replicates;
        header = {"tau", "replicate", "model", "mmad"};
        for (std::size_t ti = 0; ti < config.taus.size(); ++ti) {
            spec.tau = config.taus[ti];
            ec.seed = substream_seed(config.seed, 500 + ti);
            for (const RegressionRow& row : run_regression_experiment(spec, ec)) {
                cells.push_back({format_double(spec.tau), std::to_string(row.replicate),
                                 row.model, format_double(row.mmad_value)});
            }
        }
    } else {
        const CurveKind kind =
            config.experiment == "wave" ? CurveKind::wave : CurveKind::doppler;
        const CurveSimSpec spec = make_curve_spec(kind, curve_noise_kind(config.noise));
        header = {"tau", "replicate", "model", "mse"};
        for (std::size_t ti = 0; ti < config.taus.size(); ++ti) {
            ec.seed = substream_seed(config.seed, 500 + ti);
            const auto rows = run_curve_experiment(spec, config.taus[ti], config.replicates, ec);
            for (const CurveRow& row : rows) {
                cells.push_back({format_double(config.taus[ti]), std::to_string(row.replicate),
                                 row.model, format_double(row.mse)});
            }
        }
    }

    OutputGuard guard;
    const std::string path = config.output_dir + "/comparison_" + config.experiment + ".csv";
    guard.track(path);
    write_cells_csv(path, header, cells);
    guard.commit();
    std::cout << "wrote " << path << "\n";
}

void run_summarize(const RunConfig& config) {
    const CsvTable table = read_csv(config.input_csv);
    PosteriorDraws draws;
    for (const std::string& name : table.columns) {
        if (name == "iteration") continue;
        draws.parameter_names.push_back(name);
    }
    if (draws.parameter_names.empty()) {
        throw data_error(config.input_csv + ": no parameter columns to summarize");
    }
    draws.samples.resize(static_cast<Eigen::Index>(table.rows.size()),
                         static_cast<Eigen::Index>(draws.parameter_names.size()));
    for (std::size_t j = 0; j < draws.parameter_names.size(); ++j) {
        draws.samples.col(static_cast<Eigen::Index>(j)) =
            table.numeric_column(draws.parameter_names[j]);
    }
    draws.log_likelihood = Eigen::VectorXd::Zero(draws.samples.rows());
    draws.iterations = draws.samples.rows();
    draws.burn_in = 0;

    ensure_output_dir(config.output_dir);
    OutputGuard guard;
    const std::string path = config.output_dir + "/summary.csv";
    guard.track(path);
    write_summary_csv(path, summarize(draws));
    guard.commit();
    std::cout << "wrote " << path << "\n";
}

}  // namespace

// ---- CSV -------------------------------------------------------------------

std::size_t CsvTable::column_index(const std::string& name) const {
    for (std::size_t j = 0; j < columns.size(); ++j) {
        if (columns[j] == name) return j;
    }
    throw data_error("csv: no column named '" + name + "'");
}

Eigen::VectorXd CsvTable::numeric_column(const std::string& name) const {
    const std::size_t j = column_index(name);
    Eigen::VectorXd out(static_cast<Eigen::Index>(rows.size()));
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const std::string& cell = rows[i][j];
        errno = 0;
        char* end = nullptr;
        const double value = std::strtod(cell.c_str(), &end);
        if (cell.empty() || end != cell.c_str() + cell.size() || !std::isfinite(value)) {
            throw data_error("csv: column '" + name + "' row " + std::to_string(i + 1) +
                             ": cannot use cell '" + cell + "'");
        }
        out[static_cast<Eigen::Index>(i)] = value;
    }
    return out;
}

CsvTable read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw data_error("cannot open '" + path + "'");
    CsvTable table;
    std::string line;
    while (std::getline(in, line)) {
        if (trim(line).empty()) continue;
        const std::vector<std::string> cells = split(line, ',');
        if (table.columns.empty()) {
            table.columns = cells;
            continue;
        }
        if (cells.size() != table.columns.size()) {
            throw data_error("csv: row " + std::to_string(table.rows.size() + 1) + " has " +
                             std::to_string(cells.size()) + " cells, expected " +
                             std::to_string(table.columns.size()));
        }
        table.rows.push_back(cells);
    }
    if (table.columns.empty()) throw data_error("csv: '" + path + "' is empty");
    return table;
}

std::string format_double(double value) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.17g", value);
    return buffer;
}

void write_cells_csv(const std::string& path, const std::vector<std::string>& header,
                     const std::vector<std::vector<std::string>>& cells) {
    std::FILE* out = std::fopen(path.c_str(), "w");
    if (out == nullptr) throw data_error("cannot write '" + path + "'");
    for (std::size_t j = 0; j < header.size(); ++j) {
        std::fprintf(out, "%s%s", j == 0 ? "" : ",", header[j].c_str());
    }
    std::fprintf(out, "\n");
    for (const std::vector<std::string>& row : cells) {
        for (std::size_t j = 0; j < row.size(); ++j) {
            std::fprintf(out, "%s%s", j == 0 ? "" : ",", row[j].c_str());
        }
        std::fprintf(out, "\n");
    }
    if (std::fclose(out) != 0) throw data_error("cannot finish writing '" + path + "'");
}

void write_matrix_csv(const std::string& path, const std::vector<std::string>& header,
                      const Eigen::MatrixXd& values) {
    if (static_cast<Eigen::Index>(header.size()) != values.cols()) {
        throw data_error("csv: header size does not match matrix columns");
    }
    std::FILE* out = std::fopen(path.c_str(), "w");
    if (out == nullptr) throw data_error("cannot write '" + path + "'");
    for (std::size_t j = 0; j < header.size(); ++j) {
        std::fprintf(out, "%s%s", j == 0 ? "" : ",", header[j].c_str());
    }
    std::fprintf(out, "\n");
    for (Eigen::Index i = 0; i < values.rows(); ++i) {
        for (Eigen::Index j = 0; j < values.cols(); ++j) {
            std::fprintf(out, "%s%.17g", j == 0 ? "" : ",", values(i, j));
        }
        std::fprintf(out, "\n");
    }
    if (std::fclose(out) != 0) throw data_error("cannot finish writing '" + path + "'");
}

// ---- configuration ----------------------------------------------------------

SmoothTermConfig parse_smooth_term(const std::string& text) {
    const std::vector<std::string> parts = split(text, ':');
    if (parts.empty() || parts[0].empty() || parts.size() > 4) {
        throw usage_error("smooth term must be column[:knots[:order[:delta]]], got '" + text +
                          "'");
    }
    SmoothTermConfig term;
    term.column = parts[0];
    if (parts.size() > 1) term.knots = static_cast<int>(parse_config_long(parts[1], "smooth knots"));
    if (parts.size() > 2) term.order = static_cast<int>(parse_config_long(parts[2], "smooth order"));
    if (parts.size() > 3) term.delta = static_cast<int>(parse_config_long(parts[3], "smooth delta"));
    return term;
}

void apply_config_entry(RunConfig& config, const std::string& key, const std::string& value) {
    if (key == "input") {
        config.input_csv = value;
    } else if (key == "response") {
        config.response = value;
    } else if (key == "covariates") {
        config.covariates = split(value, ',');
    } else if (key == "smooth") {
        config.smooths.push_back(parse_smooth_term(value));
    } else if (key == "tau") {
        config.taus.clear();
        for (const std::string& part : split(value, ',')) {
            config.taus.push_back(parse_config_double(part, "tau"));
        }
    } else if (key == "intercept") {
        config.intercept = parse_config_bool(value, key);
    } else if (key == "iterations") {
        config.iterations = parse_config_long(value, key);
    } else if (key == "burn_in") {
        config.burn_in = parse_config_long(value, key);
    } else if (key == "seed") {
        config.seed = static_cast<std::uint64_t>(parse_config_long(value, key));
    } else if (key == "lasso_shape") {
        config.prior.lasso_shape = parse_config_double(value, key);
    } else if (key == "lasso_rate") {
        config.prior.lasso_rate = parse_config_double(value, key);
    } else if (key == "sigma_shape") {
        config.prior.sigma_shape = parse_config_double(value, key);
    } else if (key == "sigma_rate") {
        config.prior.sigma_rate = parse_config_double(value, key);
    } else if (key == "alpha_a") {
        config.prior.alpha_a = parse_config_double(value, key);
    } else if (key == "alpha_b") {
        config.prior.alpha_b = parse_config_double(value, key);
    } else if (key == "smooth_shape") {
        config.prior.smooth_shape = parse_config_double(value, key);
    } else if (key == "smooth_rate") {
        config.prior.smooth_rate = parse_config_double(value, key);
    } else if (key == "fixed_alpha") {
        config.fixed_alpha = parse_config_double(value, key);
    } else if (key == "experiment") {
        config.experiment = value;
    } else if (key == "noise") {
        config.noise = value;
    } else if (key == "replicates") {
        config.replicates = static_cast<int>(parse_config_long(value, key));
    } else if (key == "output_dir") {
        config.output_dir = value;
    } else {
        throw usage_error("config: unknown key '" + key + "'");
    }
}

void apply_config_file(RunConfig& config, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw usage_error("cannot open config file '" + path + "'");
    std::string line;
    long line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        const std::string entry = trim(line);
        if (entry.empty()) continue;
        const auto eq = entry.find('=');
        if (eq == std::string::npos) {
            throw usage_error("config: line " + std::to_string(line_no) +
                              " is not 'key = value'");
        }
        apply_config_entry(config, trim(entry.substr(0, eq)), trim(entry.substr(eq + 1)));
    }
}

void RunConfig::validate() const {
    static const std::set<std::string> known_commands{"fit-linear", "fit-gam", "simulate",
                                                      "summarize"};
    static const std::set<std::string> known_experiments{"mixture", "sim1", "sim2",
                                                         "sim3",    "wave", "doppler"};
    static const std::set<std::string> known_noise{"gaussian", "student_t", "linear_het",
                                                   "quad_het"};
    if (!known_commands.count(command)) throw usage_error("unknown command '" + command + "'");
    if (taus.empty()) throw usage_error("need at least one tau");
    for (const double tau : taus) {
        if (!(tau > 0.0 && tau < 1.0)) {
            throw usage_error("tau must lie in (0,1), got " + format_double(tau));
        }
    }
    if (iterations < 2) throw usage_error("iterations must be at least 2");
    if (burn_in < 0 || burn_in >= iterations) {
        throw usage_error("burn_in must lie in [0, iterations)");
    }
    if (replicates < 1) throw usage_error("replicates must be at least 1");
    if (fixed_alpha && !(*fixed_alpha > 0.0 && *fixed_alpha <= 2.0)) {
        throw usage_error("fixed_alpha must lie in (0, 2]");
    }
    try {
        prior.validate();
    } catch (const std::exception& e) {
        throw usage_error(e.what());
    }
    if (command == "fit-linear" || command == "fit-gam") {
        if (input_csv.empty()) throw usage_error(command + " requires an input csv");
        if (response.empty()) throw usage_error(command + " requires a response column");
        if (command == "fit-gam" && smooths.empty()) {
            throw usage_error("fit-gam requires at least one smooth term");
        }
        if (command == "fit-linear" && !smooths.empty()) {
            throw usage_error("fit-linear takes no smooth terms");
        }
        for (const SmoothTermConfig& term : smooths) {
            if (term.knots < 1 || term.order < 2 || term.delta < 1) {
                throw usage_error("smooth term '" + term.column +
                                  "': need knots >= 1, order >= 2, delta >= 1");
            }
        }
    } else if (command == "simulate") {
        if (!known_experiments.count(experiment)) {
            throw usage_error("unknown experiment '" + experiment + "'");
        }
        if (!known_noise.count(noise)) throw usage_error("unknown noise kind '" + noise + "'");
        const bool regression = experiment == "sim1" || experiment == "sim2" ||
                                experiment == "sim3";
        if (regression && noise != "gaussian" && noise != "student_t") {
            throw usage_error("regression experiments use gaussian or student_t noise");
        }
    } else {  // summarize
        if (input_csv.empty()) throw usage_error("summarize requires an input csv");
    }
}

// ---- command execution -------------------------------------------------------

void run(const RunConfig& config) {
    config.validate();
    if (config.command == "fit-linear" || config.command == "fit-gam") {
        run_fit(config);
    } else if (config.command == "simulate") {
        run_simulate(config);
    } else {
        run_summarize(config);
    }
}

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"Bayesian quantile regression with skew-exponential-power errors"};
    app.require_subcommand(1);

    std::string config_path, input, response, experiment, noise, output_dir;
    std::vector<std::string> covariates, smooth_texts;
    std::vector<double> taus;
    long iterations = 0, burn_in = 0;
    std::uint64_t seed = 0;
    double lasso_shape = 0, lasso_rate = 0, sigma_shape = 0, sigma_rate = 0;
    double alpha_a = 0, alpha_b = 0, smooth_shape = 0, smooth_rate = 0, fixed_alpha = 0;
    int replicates = 0;

    const auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", config_path, "key = value file; flags override");
        cmd->add_option("--tau", taus, "quantile level, repeatable (default 0.5)");
        cmd->add_option("--iterations", iterations, "total sweeps (default 50000)");
        cmd->add_option("--burn-in", burn_in, "discarded sweeps (default 10000)");
        cmd->add_option("--seed", seed, "random seed (default 1)");
        cmd->add_option("--output-dir", output_dir, "directory for result files (default .)");
        cmd->add_option("--fixed-alpha", fixed_alpha,
                        "pin the shape parameter; 1 gives the asymmetric-Laplace model");
        cmd->add_option("--lasso-shape", lasso_shape, "gamma shape on each lasso rate");
        cmd->add_option("--lasso-rate", lasso_rate, "gamma rate on each lasso rate");
        cmd->add_option("--sigma-shape", sigma_shape, "inverse-gamma shape on sigma");
        cmd->add_option("--sigma-rate", sigma_rate, "inverse-gamma rate on sigma");
        cmd->add_option("--alpha-a", alpha_a, "beta prior a on alpha/2");
        cmd->add_option("--alpha-b", alpha_b, "beta prior b on alpha/2");
        cmd->add_option("--smooth-shape", smooth_shape, "inverse-gamma shape on each h_sq");
        cmd->add_option("--smooth-rate", smooth_rate, "inverse-gamma rate on each h_sq");
    };
    const auto add_fit = [&](CLI::App* cmd) {
        cmd->add_option("--input", input, "csv file with a header row")->required();
        cmd->add_option("--response", response, "response column name")->required();
        cmd->add_option("--covariate", covariates, "covariate column, repeatable");
        cmd->add_flag("--no-intercept", "drop the automatic intercept column");
    };

    CLI::App* fit_linear = app.add_subcommand(
        "fit-linear", "linear quantile regression with a lasso prior");
    add_common(fit_linear);
    add_fit(fit_linear);

    CLI::App* fit_gam = app.add_subcommand(
        "fit-gam", "additive quantile regression with penalized spline smooths");
    add_common(fit_gam);
    add_fit(fit_gam);
    fit_gam->add_option("--smooth", smooth_texts,
                        "smooth term column[:knots[:order[:delta]]], repeatable");

    CLI::App* simulate = app.add_subcommand(
        "simulate", "run a benchmark experiment with both free and pinned shape");
    add_common(simulate);
    simulate
        ->add_option("--experiment", experiment,
                     "mixture | sim1 | sim2 | sim3 | wave | doppler")
        ->required();
    simulate->add_option("--noise", noise, "gaussian | student_t | linear_het | quad_het");
    simulate->add_option("--replicates", replicates, "datasets per experiment (default 10)");

    CLI::App* summarize_cmd =
        app.add_subcommand("summarize", "condense a draws csv into posterior summaries");
    summarize_cmd->add_option("--input", input, "draws csv")->required();
    summarize_cmd->add_option("--config", config_path, "key = value file; flags override");
    summarize_cmd->add_option("--output-dir", output_dir, "directory for summary.csv");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        CLI::App* sub = app.get_subcommands().front();
        const auto passed = [&](const char* name) {
            const CLI::Option* opt = sub->get_option_no_throw(name);
            return opt != nullptr && opt->count() > 0;
        };
        RunConfig config;
        config.command = sub->get_name();
        if (passed("--config")) apply_config_file(config, config_path);
        if (passed("--input")) config.input_csv = input;
        if (passed("--response")) config.response = response;
        if (passed("--covariate")) config.covariates = covariates;
        if (passed("--smooth")) {
            config.smooths.clear();
            for (const std::string& text : smooth_texts) {
                config.smooths.push_back(parse_smooth_term(text));
            }
        }
        if (passed("--tau")) config.taus = taus;
        if (passed("--no-intercept")) config.intercept = false;
        if (passed("--iterations")) config.iterations = iterations;
        if (passed("--burn-in")) config.burn_in = burn_in;
        if (passed("--seed")) config.seed = seed;
        if (passed("--output-dir")) config.output_dir = output_dir;
        if (passed("--fixed-alpha")) config.fixed_alpha = fixed_alpha;
        if (passed("--lasso-shape")) config.prior.lasso_shape = lasso_shape;
        if (passed("--lasso-rate")) config.prior.lasso_rate = lasso_rate;
        if (passed("--sigma-shape")) config.prior.sigma_shape = sigma_shape;
        if (passed("--sigma-rate")) config.prior.sigma_rate = sigma_rate;
        if (passed("--alpha-a")) config.prior.alpha_a = alpha_a;
        if (passed("--alpha-b")) config.prior.alpha_b = alpha_b;
        if (passed("--smooth-shape")) config.prior.smooth_shape = smooth_shape;
        if (passed("--smooth-rate")) config.prior.smooth_rate = smooth_rate;
        if (passed("--experiment")) config.experiment = experiment;
        if (passed("--noise")) config.noise = noise;
        if (passed("--replicates")) config.replicates = replicates;
        run(config);
        return 0;
    } catch (const usage_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const data_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "sampler failure: " << e.what() << "\n";
        return 3;
    }
}

}  // namespace sepqr
