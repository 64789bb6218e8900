// cli_io.hpp: CSV interchange and the command-line front end.  CSV is the
// only data format: comma-separated cells, first row a header, no quoting.
// Numeric serialization uses 17 significant digits so writing a draw matrix
// and reading it back reproduces every double bit-for-bit.
#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "sepqr/linear.hpp"

namespace sepqr {

// bad command line or config file -> exit 1
struct usage_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// unreadable, malformed, or unwritable data -> exit 2
struct data_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Raw CSV contents; cells stay strings so unreferenced columns may hold
// anything, and numeric parsing failures can cite the offending row.
struct CsvTable {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    std::size_t column_index(const std::string& name) const;

    // Strict full-cell parse; non-numeric or non-finite referenced cells
    // raise data_error naming the column and 1-based data row.
    Eigen::VectorXd numeric_column(const std::string& name) const;
};

CsvTable read_csv(const std::string& path);

// %.17g serialization; one header row then one line per matrix row.
void write_matrix_csv(const std::string& path, const std::vector<std::string>& header,
                      const Eigen::MatrixXd& values);

// As above but with preformatted cells, for tables with text columns.
void write_cells_csv(const std::string& path, const std::vector<std::string>& header,
                     const std::vector<std::vector<std::string>>& cells);

std::string format_double(double value);  // %.17g

struct SmoothTermConfig {
    std::string column;
    int knots = 20;
    int order = 4;
    int delta = 2;
};

// Everything the four commands need; flags mirror these fields and a
// `--config` file of `key = value` lines fills them first, flags overriding.
struct RunConfig {
    std::string command;  // fit-linear | fit-gam | simulate | summarize
    std::string input_csv;
    std::string response;
    std::vector<std::string> covariates;
    std::vector<SmoothTermConfig> smooths;
    std::vector<double> taus{0.5};
    bool intercept = true;
    long iterations = 50000;
    long burn_in = 10000;
    std::uint64_t seed = 1;
    PriorHyper prior;
    std::optional<double> fixed_alpha;
    std::string experiment;          // mixture | sim1 | sim2 | sim3 | wave | doppler
    std::string noise = "gaussian";  // gaussian | student_t | linear_het | quad_het
    int replicates = 10;
    std::string output_dir = ".";

    void validate() const;  // throws usage_error
};

// Apply one `key = value` config entry; unknown keys are usage errors.
void apply_config_entry(RunConfig& config, const std::string& key, const std::string& value);

// Line-oriented file of `key = value` entries; '#' starts a comment.
void apply_config_file(RunConfig& config, const std::string& path);

// parse "column:knots:order:delta" (all but the column optional)
SmoothTermConfig parse_smooth_term(const std::string& text);

// Execute one command.  fit-linear / fit-gam write draws_tau<t>.csv and
// summary_tau<t>.csv per quantile; simulate writes comparison_<name>.csv;
// summarize reads a draws file and writes summary.csv.  Throws usage_error /
// data_error / sampler exceptions; on failure every file written by this
// call is removed.
void run(const RunConfig& config);

// Full front end: argv -> RunConfig -> run(), mapping failures to exit
// codes 0 usage-help / 1 usage / 2 data / 3 sampler.
int run_cli(int argc, const char* const* argv);

}  // namespace sepqr
