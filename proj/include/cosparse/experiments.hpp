#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "cosparse/certify.hpp"

namespace cosparse {

/// A CSV table with a `#`-prefixed header block of key/value pairs.
struct Table {
    std::vector<std::pair<std::string, std::string>> meta;
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    void add_meta(const std::string& key, const std::string& value) { meta.emplace_back(key, value); }
    /// Index of a column by name; throws DataError when absent.
    std::size_t column(const std::string& name) const;
};

void write_table(std::ostream& os, const Table& t);
std::string write_table(const Table& t);

/// %.17g, the format used for every number in experiment output.
std::string format_number(double v);

/// Parses "a,b,c" or the inclusive range "start:step:stop".
std::vector<double> parse_grid(const std::string& text);

/// Spearman rank correlation with average ranks for ties. NaN when either
/// sample is constant.
double spearman(const std::vector<double>& x, const std::vector<double>& y);

struct WilsonInterval {
    double low = 0.0;
    double high = 0.0;
};
/// 95% Wilson score interval for `successes` out of `trials`.
WilsonInterval wilson_interval(int successes, int trials);

/// Seed of one Monte-Carlo replication: seed XOR splitmix64((cell << 32) | rep).
std::uint64_t replication_seed(std::uint64_t seed, std::uint64_t cell, std::uint64_t rep);

/// Half-open index range [first, last).
struct Block {
    int first = 0;
    int last = 0;
};

// ---- TV staircase ----------------------------------------------------------

struct StaircaseBreaks {
    double lambda1 = 0.0;
    double lambda2 = 0.0;
};
/// (lambda1, lambda2) for eps >= 0, (lambda1 bar, lambda2 bar) for eps < 0.
StaircaseBreaks staircase_breaks(int n, double epsilon);

/// y = -1 on the first quarter, +1 on the last, with eps (1_{l3} - 1_{l2}) added.
Vec staircase_observation(int n, double epsilon);
Vec staircase_signal(int n);

/// Closed-form TV denoising path of the staircase observation at lambda.
Vec staircase_closed_form(int n, double epsilon, double lambda);

struct StaircasePoint {
    double lambda = 0.0;
    Vec solution;
    Vec closed_form;
    double deviation = 0.0;  // max-abs
    bool near_kink = false;
    bool converged = false;
    double stationarity_residual = 0.0;
    bool certified = false;
};

struct StaircaseRun {
    int n = 0;
    double epsilon = 0.0;
    StaircaseBreaks breaks;
    std::vector<StaircasePoint> points;

    /// Largest deviation over the points away from the kinks.
    double max_deviation_off_kinks() const;
};

/// Evenly spaced grid of `points` values on [0, factor * lambda2].
std::vector<double> staircase_lambda_grid(int n, double epsilon, int points = 50, double factor = 1.2);

StaircaseRun run_tv_staircase(int n, double epsilon, const std::vector<double>& lambda_grid,
                              const SolveConfig& cfg = {});
Table staircase_table(const StaircaseRun& run);

// ---- Haar deconvolution ----------------------------------------------------

/// [floor(N/2 - eta N), floor(N/2 + eta N)).
Block haar_boxcar_block(int n, double eta);

struct HaarPoint {
    double sigma = 0.0;
    std::string dictionary;
    double ic = 0.0;
    bool converged = false;
    int iterations = 0;
    /// Empty unless the criterion could not be evaluated.
    std::string error;
};

struct HaarRun {
    int n = 0;
    int j_max = 0;
    double eta = 0.0;
    Block block;
    std::vector<double> taus;
    std::vector<double> sigmas;
    std::vector<HaarPoint> points;
};

HaarRun run_haar_deconv(int n, int j_max, const std::vector<double>& taus, const std::vector<double>& sigmas,
                        double eta, const DrParams& dr = {});
Table haar_table(const HaarRun& run);

// ---- Fused Lasso compressed sensing ----------------------------------------

/// The two boxcars [floor((1/2 - eta - rho) N), floor((1/2 - rho) N)) and
/// [floor((1/2 + rho) N), floor((1/2 + eta + rho) N)).
std::pair<Block, Block> fused_boxcar_blocks(int n, double eta, double rho);
Vec fused_signal(int n, double eta, double rho);

enum class FusedAxis { SamplingRatio, Epsilon };

struct FusedConfig {
    int n = 32;
    double rho = 0.1;
    double epsilon = 0.1;     // fixed when the axis is the sampling ratio
    double qn = 1.0;          // fixed when the axis is epsilon
    std::vector<double> etas{0.05, 0.1};
    FusedAxis axis = FusedAxis::SamplingRatio;
    std::vector<double> axis_values{0.5, 0.7, 0.9, 1.0};
    int reps = 100;
    std::uint64_t seed = 1;
    int threads = 0;
    DrParams dr;
};

struct FusedCell {
    double eta = 0.0;
    double axis_value = 0.0;
    int q = 0;
    double epsilon = 0.0;
    int successes = 0;  // draws with IC < 1
    int hj_failures = 0;
    int unconverged = 0;
    double probability = 0.0;
    WilsonInterval interval;
};

struct FusedRun {
    FusedConfig config;
    std::vector<FusedCell> cells;  // eta-major
};

FusedRun run_fused_cs(const FusedConfig& cfg);
Table fused_table(const FusedRun& run);

// ---- dispatch ----------------------------------------------------------------

struct ExperimentSpec {
    std::string name;  // tv_staircase, haar_deconv or fused_cs
    std::map<std::string, std::string> parameters;
    std::uint64_t seed = 1;
    std::string output_path;
};

/// Runs a named experiment with string parameters; unknown names or keys are usage errors.
Table run_experiment(const ExperimentSpec& spec);

}  // namespace cosparse
