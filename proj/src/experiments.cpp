#include "cosparse/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <set>
#include <sstream>
#include <thread>

namespace cosparse {

std::size_t Table::column(const std::string& name) const {
    const auto it = std::find(columns.begin(), columns.end(), name);
    if (it == columns.end()) throw DataError("table has no column '" + name + "'");
    return static_cast<std::size_t>(it - columns.begin());
}

std::string format_number(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_table(std::ostream& os, const Table& t) {
    for (const auto& [k, v] : t.meta) os << "# " << k << " = " << v << '\n';
    for (std::size_t c = 0; c < t.columns.size(); ++c) os << (c ? "," : "") << t.columns[c];
    os << '\n';
    for (const auto& row : t.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) os << (c ? "," : "") << row[c];
        os << '\n';
    }
}

std::string write_table(const Table& t) {
    std::ostringstream os;
    write_table(os, t);
    return os.str();
}

namespace {

double parse_number(const std::string& text, const std::string& what) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception&) {
        throw UsageError("cannot parse '" + text + "' as a number for " + what);
    }
    if (used != text.size() || !std::isfinite(v)) {
        throw UsageError("cannot parse '" + text + "' as a number for " + what);
    }
    return v;
}

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream is(text);
    while (std::getline(is, item, sep)) out.push_back(item);
    if (!text.empty() && text.back() == sep) out.emplace_back();
    return out;
}

std::string join_numbers(const std::vector<double>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ";" : "") + format_number(v[i]);
    return out;
}

// Floor with a little slack so that e.g. 0.3 * 40 lands on 12, not 11.
int floor_index(double v) { return static_cast<int>(std::floor(v + 1e-9)); }

std::vector<double> average_ranks(const std::vector<double>& v) {
    std::vector<std::size_t> order(v.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&v](std::size_t a, std::size_t b) { return v[a] < v[b]; });
    std::vector<double> ranks(v.size());
    for (std::size_t i = 0; i < order.size();) {
        std::size_t j = i;
        while (j + 1 < order.size() && v[order[j + 1]] == v[order[i]]) ++j;
        const double r = 0.5 * static_cast<double>(i + j) + 1.0;
        for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = r;
        i = j + 1;
    }
    return ranks;
}

std::string block_text(const Block& b) {
    return "[" + std::to_string(b.first) + "," + std::to_string(b.last) + ")";
}

}  // namespace

std::vector<double> parse_grid(const std::string& text) {
    if (text.empty()) throw UsageError("empty grid");
    if (text.find(':') != std::string::npos) {
        const auto parts = split(text, ':');
        if (parts.size() != 3) throw UsageError("range grid must look like start:step:stop, got '" + text + "'");
        const double start = parse_number(parts[0], "grid start");
        const double step = parse_number(parts[1], "grid step");
        const double stop = parse_number(parts[2], "grid stop");
        if (!(step > 0.0) || stop < start) throw UsageError("range grid '" + text + "' is empty or has a bad step");
        const auto count = static_cast<long>(std::floor((stop - start) / step + 1e-9));
        std::vector<double> out;
        for (long k = 0; k <= count; ++k) out.push_back(start + static_cast<double>(k) * step);
        return out;
    }
    std::vector<double> out;
    for (const auto& item : split(text, ',')) out.push_back(parse_number(item, "grid value"));
    return out;
}

double spearman(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2) throw DataError("spearman: need two samples of equal length >= 2");
    const auto rx = average_ranks(x);
    const auto ry = average_ranks(y);
    const double n = static_cast<double>(x.size());
    const double mx = std::accumulate(rx.begin(), rx.end(), 0.0) / n;
    const double my = std::accumulate(ry.begin(), ry.end(), 0.0) / n;
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < rx.size(); ++i) {
        sxy += (rx[i] - mx) * (ry[i] - my);
        sxx += (rx[i] - mx) * (rx[i] - mx);
        syy += (ry[i] - my) * (ry[i] - my);
    }
    if (sxx == 0.0 || syy == 0.0) return std::nan("");
    return sxy / std::sqrt(sxx * syy);
}

WilsonInterval wilson_interval(int successes, int trials) {
    if (trials <= 0) return {0.0, 1.0};
    constexpr double z = 1.959963984540054;
    const double n = trials;
    const double p = successes / n;
    const double denom = 1.0 + z * z / n;
    const double center = (p + z * z / (2.0 * n)) / denom;
    const double half = z / denom * std::sqrt(p * (1.0 - p) / n + z * z / (4.0 * n * n));
    return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

std::uint64_t replication_seed(std::uint64_t seed, std::uint64_t cell, std::uint64_t rep) {
    std::uint64_t z = (cell << 32) | (rep & 0xffffffffu);
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    z ^= z >> 31;
    return seed ^ z;
}

// ---- TV staircase ----------------------------------------------------------

namespace {

void check_staircase_n(int n) {
    if (n < 4 || n % 4 != 0) throw UsageError("staircase: n must be a positive multiple of 4, got " + std::to_string(n));
}

}  // namespace

StaircaseBreaks staircase_breaks(int n, double epsilon) {
    check_staircase_n(n);
    const double m = n / 4.0;
    if (epsilon < 0.0) return {-epsilon * m / 2.0, m};
    const double l1 = m * (1.0 - epsilon);
    return {l1, l1 + 2.0 * epsilon * m};
}

Vec staircase_signal(int n) {
    check_staircase_n(n);
    const int m = n / 4;
    Vec x = Vec::Zero(n);
    x.head(m).setConstant(-1.0);
    x.tail(m).setConstant(1.0);
    return x;
}

Vec staircase_observation(int n, double epsilon) {
    Vec y = staircase_signal(n);
    const int m = n / 4;
    y.segment(m, m).array() -= epsilon;
    y.segment(2 * m, m).array() += epsilon;
    return y;
}

Vec staircase_closed_form(int n, double epsilon, double lambda) {
    if (lambda < 0.0) throw UsageError("staircase: lambda must be nonnegative");
    const auto [l1, l2] = staircase_breaks(n, epsilon);
    const int m = n / 4;
    const double md = m;
    double b[4] = {0.0, 0.0, 0.0, 0.0};
    if (epsilon >= 0.0) {
        if (lambda <= l1) {
            b[0] = -1.0 + lambda / md;
            b[1] = -epsilon;
            b[2] = epsilon;
            b[3] = 1.0 - lambda / md;
        } else if (lambda <= l2) {
            const double v = epsilon - (lambda - l1) / (2.0 * md);
            b[0] = b[1] = -v;
            b[2] = b[3] = v;
        }
    } else {
        if (lambda <= l1) {
            const double inner = epsilon + 2.0 * lambda / md;
            b[0] = -1.0 + lambda / md;
            b[1] = -inner;
            b[2] = inner;
            b[3] = 1.0 - lambda / md;
        } else if (lambda <= l2) {
            b[0] = -1.0 + lambda / md;
            b[3] = 1.0 - lambda / md;
        }
    }
    Vec x(n);
    for (int k = 0; k < 4; ++k) x.segment(k * m, m).setConstant(b[k]);
    return x;
}

std::vector<double> staircase_lambda_grid(int n, double epsilon, int points, double factor) {
    if (points < 2) throw UsageError("staircase: the lambda grid needs at least 2 points");
    if (!(factor > 0.0)) throw UsageError("staircase: lambda_max factor must be positive");
    const double top = factor * staircase_breaks(n, epsilon).lambda2;
    std::vector<double> grid(static_cast<std::size_t>(points));
    for (int k = 0; k < points; ++k) grid[static_cast<std::size_t>(k)] = top * k / (points - 1);
    return grid;
}

double StaircaseRun::max_deviation_off_kinks() const {
    double worst = 0.0;
    for (const auto& p : points)
        if (!p.near_kink) worst = std::max(worst, p.deviation);
    return worst;
}

StaircaseRun run_tv_staircase(int n, double epsilon, const std::vector<double>& lambda_grid,
                              const SolveConfig& cfg) {
    StaircaseRun run;
    run.n = n;
    run.epsilon = epsilon;
    run.breaks = staircase_breaks(n, epsilon);
    const Dictionary tv = make_tv(n);
    const Mat phi = Mat::Identity(n, n);
    const Vec y = staircase_observation(n, epsilon);
    for (double lambda : lambda_grid) {
        SolveConfig c = cfg;
        c.lambda = lambda;
        const SolverReport rep = solve_lasso(phi, tv, y, c);
        StaircasePoint pt;
        pt.lambda = lambda;
        pt.solution = rep.solution;
        pt.closed_form = staircase_closed_form(n, epsilon, lambda);
        pt.deviation = (pt.solution - pt.closed_form).cwiseAbs().maxCoeff();
        pt.near_kink = std::abs(lambda - run.breaks.lambda1) <= 1e-3 || std::abs(lambda - run.breaks.lambda2) <= 1e-3;
        pt.converged = rep.converged;
        if (lambda > 0.0) {
            const auto cert = first_order_certificate(phi, tv, y, lambda, rep.solution);
            pt.stationarity_residual = cert.stationarity_residual;
            pt.certified = cert.certified;
        } else {
            // lambda = 0: optimality is just a vanishing gradient.
            pt.stationarity_residual = (rep.solution - y).norm();
            pt.certified = pt.stationarity_residual <= 1e-6 * (1.0 + y.norm());
        }
        run.points.push_back(std::move(pt));
    }
    return run;
}

Table staircase_table(const StaircaseRun& run) {
    Table t;
    t.add_meta("experiment", "tv_staircase");
    t.add_meta("n", std::to_string(run.n));
    t.add_meta("epsilon", format_number(run.epsilon));
    t.add_meta("lambda1", format_number(run.breaks.lambda1));
    t.add_meta("lambda2", format_number(run.breaks.lambda2));
    t.add_meta("blocks", "four half-open blocks of length n/4; block values are block means");
    t.add_meta("near_kink", "|lambda - lambda1| <= 1e-3 or |lambda - lambda2| <= 1e-3");
    t.columns = {"lambda", "x_l1", "x_l2", "x_l3", "x_l4", "cf_l1", "cf_l2", "cf_l3", "cf_l4",
                 "max_abs_deviation", "near_kink", "converged", "stationarity_residual", "certified"};
    const int m = run.n / 4;
    for (const auto& p : run.points) {
        std::vector<std::string> row{format_number(p.lambda)};
        for (int k = 0; k < 4; ++k) row.push_back(format_number(p.solution.segment(k * m, m).mean()));
        for (int k = 0; k < 4; ++k) row.push_back(format_number(p.closed_form.segment(k * m, m).mean()));
        row.push_back(format_number(p.deviation));
        row.push_back(p.near_kink ? "1" : "0");
        row.push_back(p.converged ? "1" : "0");
        row.push_back(format_number(p.stationarity_residual));
        row.push_back(p.certified ? "1" : "0");
        t.rows.push_back(std::move(row));
    }
    return t;
}

// ---- Haar deconvolution ----------------------------------------------------

Block haar_boxcar_block(int n, double eta) {
    if (!(eta > 0.0 && eta <= 0.5)) throw UsageError("haar_deconv: eta must lie in (0, 1/2]");
    Block b{floor_index(n / 2.0 - eta * n), floor_index(n / 2.0 + eta * n)};
    b.first = std::max(b.first, 0);
    b.last = std::min(b.last, n);
    if (b.last <= b.first) throw UsageError("haar_deconv: eta too small for n, the boxcar is empty");
    return b;
}

HaarRun run_haar_deconv(int n, int j_max, const std::vector<double>& taus, const std::vector<double>& sigmas,
                        double eta, const DrParams& dr) {
    HaarRun run;
    run.n = n;
    run.j_max = j_max;
    run.eta = eta;
    run.taus = taus;
    run.sigmas = sigmas;
    run.block = haar_boxcar_block(n, eta);
    Vec x = Vec::Zero(n);
    x.segment(run.block.first, run.block.last - run.block.first).setConstant(1.0);

    std::vector<Dictionary> dicts;
    for (double tau : taus) {
        Dictionary h = make_haar(n, j_max, tau);
        dicts.emplace_back(h.kind(), h.matrix(),
                           "haar:jmax=" + std::to_string(j_max) + ",tau=" + format_number(tau));
    }
    dicts.push_back(make_tv(n));

    for (const auto& dict : dicts) {
        for (double sigma : sigmas) {
            HaarPoint pt;
            pt.sigma = sigma;
            pt.dictionary = dict.label();
            try {
                const Mat phi = circular_gaussian_blur(n, sigma).materialize();
                const auto dec = build_decomposition_for(dict, phi, x);
                const auto res = compute_ic(dec, d_support(x, dict), dr);
                pt.ic = res.value;
                pt.converged = res.converged;
                pt.iterations = res.iterations;
            } catch (const PreconditionError& e) {
                pt.ic = std::nan("");
                pt.error = e.what();
            }
            run.points.push_back(std::move(pt));
        }
    }
    return run;
}

Table haar_table(const HaarRun& run) {
    Table t;
    t.add_meta("experiment", "haar_deconv");
    t.add_meta("n", std::to_string(run.n));
    t.add_meta("jmax", std::to_string(run.j_max));
    t.add_meta("eta", format_number(run.eta));
    t.add_meta("taus", join_numbers(run.taus));
    t.add_meta("sigma_grid", join_numbers(run.sigmas));
    t.add_meta("signal", "boxcar on half-open index range " + block_text(run.block));
    t.add_meta("phi", "circular Gaussian blur, kernel truncated at ceil(4 sigma)");
    t.columns = {"sigma", "dictionary", "ic", "converged", "iterations", "error"};
    for (const auto& p : run.points) {
        t.rows.push_back({format_number(p.sigma), p.dictionary, format_number(p.ic), p.converged ? "1" : "0",
                          std::to_string(p.iterations), p.error.empty() ? "" : "\"" + p.error + "\""});
    }
    return t;
}

// ---- Fused Lasso compressed sensing ----------------------------------------

std::pair<Block, Block> fused_boxcar_blocks(int n, double eta, double rho) {
    if (!(eta > 0.0) || !(rho >= 0.0)) throw UsageError("fused_cs: eta must be positive and rho nonnegative");
    const Block a{floor_index((0.5 - eta - rho) * n), floor_index((0.5 - rho) * n)};
    const Block b{floor_index((0.5 + rho) * n), floor_index((0.5 + eta + rho) * n)};
    if (a.first < 0 || b.last > n) throw UsageError("fused_cs: the boxcars leave the signal, reduce eta or rho");
    if (a.last <= a.first || b.last <= b.first) throw UsageError("fused_cs: eta too small for n, a boxcar is empty");
    return {a, b};
}

Vec fused_signal(int n, double eta, double rho) {
    const auto [a, b] = fused_boxcar_blocks(n, eta, rho);
    Vec x = Vec::Zero(n);
    x.segment(a.first, a.last - a.first).array() += 1.0;
    x.segment(b.first, b.last - b.first).array() += 1.0;
    return x;
}

FusedRun run_fused_cs(const FusedConfig& cfg) {
    if (cfg.n < 4) throw UsageError("fused_cs: n must be at least 4");
    if (cfg.reps < 1) throw UsageError("fused_cs: reps must be positive");
    if (cfg.etas.empty() || cfg.axis_values.empty()) throw UsageError("fused_cs: empty grid");

    FusedRun run;
    run.config = cfg;
    for (double eta : cfg.etas) {
        for (double v : cfg.axis_values) {
            FusedCell cell;
            cell.eta = eta;
            cell.axis_value = v;
            const double qn = cfg.axis == FusedAxis::SamplingRatio ? v : cfg.qn;
            cell.epsilon = cfg.axis == FusedAxis::Epsilon ? v : cfg.epsilon;
            if (!(qn > 0.0 && qn <= 1.0)) throw UsageError("fused_cs: Q/N must lie in (0, 1]");
            if (!(cell.epsilon > 0.0)) throw UsageError("fused_cs: epsilon must be positive");
            cell.q = std::max(1, static_cast<int>(std::lround(qn * cfg.n)));
            fused_boxcar_blocks(cfg.n, eta, cfg.rho);
            run.cells.push_back(cell);
        }
    }

    enum class Outcome : unsigned char { Recoverable, NotRecoverable, HjFailure };
    struct Draw {
        Outcome outcome = Outcome::NotRecoverable;
        bool converged = true;
    };
    const std::size_t reps = static_cast<std::size_t>(cfg.reps);
    const std::size_t total = run.cells.size() * reps;
    std::vector<Draw> draws(total);

    auto work = [&](std::atomic<std::size_t>& next) {
        for (std::size_t task = next++; task < total; task = next++) {
            const std::size_t c = task / reps;
            const std::size_t r = task % reps;
            const FusedCell& cell = run.cells[c];
            const Dictionary dict = make_fused(cfg.n, cell.epsilon);
            const Vec x = fused_signal(cfg.n, cell.eta, cfg.rho);
            const Mat phi = gaussian_random_matrix(cell.q, cfg.n, replication_seed(cfg.seed, c, r));
            Draw& d = draws[task];
            try {
                const auto dec = build_decomposition_for(dict, phi, x);
                const auto res = compute_ic(dec, d_support(x, dict), cfg.dr);
                d.outcome = res.value < 1.0 ? Outcome::Recoverable : Outcome::NotRecoverable;
                d.converged = res.converged;
            } catch (const PreconditionError&) {
                d.outcome = Outcome::HjFailure;
            }
        }
    };
    std::atomic<std::size_t> next{0};
    const int workers = std::max(1, std::min<int>(cfg.threads > 0 ? cfg.threads : default_thread_count(),
                                                  static_cast<int>(total)));
    if (workers == 1) {
        work(next);
    } else {
        std::vector<std::jthread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back([&] { work(next); });
    }

    for (std::size_t c = 0; c < run.cells.size(); ++c) {
        FusedCell& cell = run.cells[c];
        for (std::size_t r = 0; r < reps; ++r) {
            const Draw& d = draws[c * reps + r];
            if (d.outcome == Outcome::Recoverable) ++cell.successes;
            if (d.outcome == Outcome::HjFailure) ++cell.hj_failures;
            if (!d.converged) ++cell.unconverged;
        }
        cell.probability = static_cast<double>(cell.successes) / cfg.reps;
        cell.interval = wilson_interval(cell.successes, cfg.reps);
    }
    return run;
}

Table fused_table(const FusedRun& run) {
    const FusedConfig& cfg = run.config;
    const bool by_qn = cfg.axis == FusedAxis::SamplingRatio;
    Table t;
    t.add_meta("experiment", "fused_cs");
    t.add_meta("n", std::to_string(cfg.n));
    t.add_meta("rho", format_number(cfg.rho));
    if (by_qn) {
        t.add_meta("eps", format_number(cfg.epsilon));
        t.add_meta("qn_grid", join_numbers(cfg.axis_values));
    } else {
        t.add_meta("qn", format_number(cfg.qn));
        t.add_meta("eps_grid", join_numbers(cfg.axis_values));
    }
    t.add_meta("eta_grid", join_numbers(cfg.etas));
    t.add_meta("reps", std::to_string(cfg.reps));
    t.add_meta("seed", std::to_string(cfg.seed));
    t.add_meta("replication_seed", "seed XOR splitmix64((cell << 32) | rep), cells numbered eta-major from 0");
    t.add_meta("signal", "two unit boxcars on half-open ranges [floor((1/2-eta-rho)N), floor((1/2-rho)N)) "
                         "and [floor((1/2+rho)N), floor((1/2+eta+rho)N))");
    t.add_meta("event", "IC < 1; draws where H_J fails count as not recoverable");
    t.add_meta("interval", "Wilson score, 95%");
    t.columns = {"eta", by_qn ? "qn" : "eps", "q", "reps", "successes", "probability", "wilson_low",
                 "wilson_high", "hj_failures", "unconverged"};
    for (const auto& c : run.cells) {
        t.rows.push_back({format_number(c.eta), format_number(c.axis_value), std::to_string(c.q),
                          std::to_string(cfg.reps), std::to_string(c.successes), format_number(c.probability),
                          format_number(c.interval.low), format_number(c.interval.high),
                          std::to_string(c.hj_failures), std::to_string(c.unconverged)});
    }
    return t;
}

// ---- dispatch ----------------------------------------------------------------

namespace {

class Params {
public:
    explicit Params(const std::map<std::string, std::string>& values) : values_(values) {}

    double number(const std::string& key, double fallback) {
        used_.insert(key);
        const auto it = values_.find(key);
        return it == values_.end() ? fallback : parse_number(it->second, key);
    }
    int integer(const std::string& key, int fallback) {
        const double v = number(key, fallback);
        if (v != std::floor(v) || std::abs(v) > 1e9) throw UsageError(key + " must be an integer");
        return static_cast<int>(v);
    }
    std::vector<double> grid(const std::string& key, const std::string& fallback) {
        used_.insert(key);
        const auto it = values_.find(key);
        return parse_grid(it == values_.end() ? fallback : it->second);
    }
    bool has(const std::string& key) const { return values_.count(key) > 0; }
    void reject_unknown(const std::string& experiment) const {
        for (const auto& [k, v] : values_)
            if (!used_.count(k)) throw UsageError("experiment " + experiment + " has no parameter '" + k + "'");
    }

private:
    const std::map<std::string, std::string>& values_;
    std::set<std::string> used_;
};

}  // namespace

Table run_experiment(const ExperimentSpec& spec) {
    Params p(spec.parameters);
    if (spec.name == "tv_staircase") {
        const int n = p.integer("n", 32);
        const double eps = p.number("eps", 0.5);
        std::vector<double> grid;
        if (p.has("lambda_grid")) {
            grid = p.grid("lambda_grid", "");
        } else {
            grid = staircase_lambda_grid(n, eps, p.integer("points", 50), p.number("lambda_max_factor", 1.2));
        }
        p.reject_unknown(spec.name);
        Table t = staircase_table(run_tv_staircase(n, eps, grid));
        t.add_meta("seed", std::to_string(spec.seed) + " (unused, the experiment is deterministic)");
        return t;
    }
    if (spec.name == "haar_deconv") {
        const int n = p.integer("n", 64);
        const int jmax = p.integer("jmax", 4);
        const auto taus = p.grid("taus", "0.5,1");
        const auto sigmas = p.grid("sigma_grid", "0.5:0.25:3.0");
        const double eta = p.number("eta", 0.2);
        p.reject_unknown(spec.name);
        Table t = haar_table(run_haar_deconv(n, jmax, taus, sigmas, eta));
        t.add_meta("seed", std::to_string(spec.seed) + " (unused, the experiment is deterministic)");
        return t;
    }
    if (spec.name == "fused_cs") {
        FusedConfig cfg;
        cfg.n = p.integer("n", 32);
        cfg.rho = p.number("rho", 0.1);
        cfg.etas = p.grid("eta_grid", "0.05,0.1");
        cfg.reps = p.integer("reps", 100);
        cfg.threads = p.integer("threads", 0);
        cfg.seed = spec.seed;
        if (p.has("eps_grid")) {
            if (p.has("qn_grid")) throw UsageError("fused_cs takes either qn_grid or eps_grid, not both");
            cfg.axis = FusedAxis::Epsilon;
            cfg.axis_values = p.grid("eps_grid", "");
            cfg.qn = p.number("qn", 1.0);
        } else {
            cfg.axis = FusedAxis::SamplingRatio;
            cfg.axis_values = p.grid("qn_grid", "0.5,0.7,0.9,1.0");
            cfg.epsilon = p.number("eps", 0.1);
        }
        p.reject_unknown(spec.name);
        return fused_table(run_fused_cs(cfg));
    }
    throw UsageError("unknown experiment '" + spec.name + "' (expected tv_staircase, haar_deconv or fused_cs)");
}

}  // namespace cosparse
