#include "cosparse/solvers.hpp"

#include <algorithm>
#include <cmath>

#include "cosparse/certify.hpp"

namespace cosparse {

namespace {

constexpr double kStepSafety = 0.99;

// Change measured against the iterate, or against `floor` when the iterate is
// near zero (e.g. lambda beyond the point where the solution vanishes).
double relative_change(const Vec& now, const Vec& before, double floor) {
    const double scale = std::max({now.norm(), floor, 1e-300});
    return (now - before).norm() / scale;
}

bool trace_monotone_after(const std::vector<double>& trace, int every, int warmup) {
    const auto start = static_cast<std::size_t>(warmup / std::max(every, 1));
    for (std::size_t k = start + 1; k < trace.size(); ++k) {
        const double slack = 1e-9 * std::max(std::abs(trace[k - 1]), 1e-12);
        if (trace[k] > trace[k - 1] + slack) return false;
    }
    return true;
}

void validate(const Mat& phi, const Dictionary& dict, const Vec& y, const SolveConfig& cfg) {
    if (!(cfg.lambda >= 0.0) || !std::isfinite(cfg.lambda)) {
        throw UsageError("lambda must be a nonnegative number");
    }
    if (phi.cols() != dict.n()) throw DataError("Phi and the dictionary act on different dimensions");
    if (phi.rows() != y.size()) {
        throw DataError("observation length " + std::to_string(y.size()) + " does not match Phi's " +
                        std::to_string(phi.rows()) + " rows");
    }
    if (cfg.x_init && cfg.x_init->size() != dict.n()) throw DataError("initial point has the wrong length");
    if (cfg.theta < 0.0 || cfg.theta > 1.0) throw UsageError("theta must lie in [0, 1]");
    if (!(cfg.step_ratio > 0.0)) throw UsageError("step_ratio must be positive");
}

/// Tries successively looser support thresholds; keeps the first face solution
/// that is sign consistent, certified optimal and no worse than the iterate.
std::optional<Vec> polish(const Mat& phi, const Dictionary& dict, const Vec& y, double lambda, const Vec& x) {
    if (!(lambda > 0.0)) return std::nullopt;
    const Vec a = dict.analysis(x);
    const double amax = a.size() ? a.cwiseAbs().maxCoeff() : 0.0;
    const double base = lasso_objective(phi, dict, y, lambda, x);
    // The last candidate (threshold above every coefficient) is the face D* x = 0.
    for (double rel : {1e-8, 1e-6, 1e-4, 1e-3, 2.0}) {
        const SignVector s = sign_of(a, rel * amax);
        const auto candidate = face_solution(phi, dict, y, lambda, s);
        if (!candidate) continue;
        CertifyOptions opts;
        opts.compare_with = s;
        const auto cert = first_order_certificate(phi, dict, y, lambda, *candidate, opts);
        if (!cert.certified || !cert.sign_match.value_or(false)) continue;
        const double obj = lasso_objective(phi, dict, y, lambda, *candidate);
        if (obj <= base + 1e-12 * std::max(1.0, std::abs(base))) return candidate;
    }
    return std::nullopt;
}

void finish(SolverReport& rep, const Mat& phi, const Dictionary& dict, const Vec& y, const SolveConfig& cfg) {
    rep.raw_solution = rep.solution;
    if (cfg.polish) {
        if (auto p = polish(phi, dict, y, cfg.lambda, rep.solution)) {
            rep.solution = std::move(*p);
            rep.polished = true;
        }
    }
    rep.objective = lasso_objective(phi, dict, y, cfg.lambda, rep.solution);
}

}  // namespace

double lasso_objective(const Mat& phi, const Dictionary& dict, const Vec& y, double lambda, const Vec& x) {
    return 0.5 * (y - phi * x).squaredNorm() + lambda * dict.analysis(x).lpNorm<1>();
}

Vec soft_threshold(const Vec& x, double t) {
    if (t < 0.0) throw UsageError("soft_threshold: threshold must be nonnegative");
    return x.unaryExpr([t](double v) { return v > t ? v - t : (v < -t ? v + t : 0.0); });
}

std::optional<Vec> face_solution(const Mat& phi, const Dictionary& dict, const Vec& y, double lambda,
                                 const SignVector& s) {
    const IndexSet support = s.support();
    const Mat u = cospace_basis(dict, s.cosupport());
    if (u.cols() == 0) return Vec::Zero(dict.n());
    const Mat phi_u = phi * u;
    if (numerical_rank(phi_u) < u.cols()) return std::nullopt;
    Vec rhs = phi.transpose() * y;
    if (!support.empty()) rhs -= lambda * dict.columns(support) * s.on_support();
    const Eigen::LLT<Mat> llt(phi_u.transpose() * phi_u);
    if (llt.info() != Eigen::Success) return std::nullopt;
    return Vec(u * llt.solve(u.transpose() * rhs));
}

SolverReport solve_lasso(const LinearOperator& phi, const Dictionary& dict, const Vec& y,
                         const SolveConfig& cfg) {
    return solve_lasso(phi.materialize(), dict, y, cfg);
}

SolverReport solve_lasso(const Mat& phi, const Dictionary& dict, const Vec& y, const SolveConfig& cfg) {
    validate(phi, dict, y, cfg);
    if (!check_h0(dict, phi)) {
        throw PreconditionError("condition H_0 violated: Ker Phi and Ker D* share a nonzero vector, "
                                "the Lasso minimizers are not bounded");
    }
    const Mat& d = dict.matrix();
    const Eigen::Index q = phi.rows();
    const Eigen::Index p = dict.p();
    const double lambda = cfg.lambda;

    Mat k(q + p, dict.n());
    k << phi, d.transpose();
    const double knorm = op_norm(k, Norm::L2, Norm::L2);
    const double c = std::sqrt(kStepSafety);
    const double sigma = cfg.step_ratio * c / knorm;
    const double tau = c / (cfg.step_ratio * knorm);
    const double floor = (phi.transpose() * y).norm() / (knorm * knorm);

    SolverReport rep;
    rep.method = "primal-dual";
    Vec x = cfg.x_init.value_or(Vec::Zero(dict.n()));
    Vec x_bar = x;
    Vec dual_data = Vec::Zero(q);
    Vec dual_reg = Vec::Zero(p);
    double last_objective = lasso_objective(phi, dict, y, lambda, x);
    const int every = std::max(cfg.trace_every, 1);

    int it = 0;
    for (; it < cfg.max_iters; ++it) {
        dual_data = (dual_data + sigma * (phi * x_bar - y)) / (1.0 + sigma);
        dual_reg = (dual_reg + sigma * (d.transpose() * x_bar)).cwiseMax(-lambda).cwiseMin(lambda);
        const Vec x_next = x - tau * (phi.transpose() * dual_data + d * dual_reg);
        x_bar = x_next + cfg.theta * (x_next - x);
        const double change = relative_change(x_next, x, floor);
        x = x_next;
        if ((it + 1) % every == 0) {
            const double objective = lasso_objective(phi, dict, y, lambda, x);
            rep.objective_trace.push_back(objective);
            rep.residual_trace.push_back(change);
            const double obj_change =
                std::abs(objective - last_objective) / std::max(std::abs(objective), 1e-300);
            last_objective = objective;
            if (change <= cfg.tol && obj_change <= cfg.tol) {
                rep.converged = true;
                ++it;
                break;
            }
        }
    }
    rep.iterations = it;
    rep.solution = x;
    if (!trace_monotone_after(rep.objective_trace, every, 100)) rep.converged = false;
    finish(rep, phi, dict, y, cfg);
    return rep;
}

SolverReport solve_denoise_dual(const Dictionary& dict, const Vec& y, const SolveConfig& cfg) {
    const Mat phi = Mat::Identity(dict.n(), dict.n());
    validate(phi, dict, y, cfg);
    const Mat& d = dict.matrix();
    const double lambda = cfg.lambda;
    const double lip = std::pow(op_norm(d, Norm::L2, Norm::L2), 2);
    const double step = 1.0 / lip;
    const double floor = y.norm();

    SolverReport rep;
    rep.method = "dual-projected-gradient";
    Vec alpha = Vec::Zero(dict.p());
    Vec momentum = alpha;
    double t = 1.0;
    auto dual_objective = [&](const Vec& a) { return 0.5 * (y + d * a).squaredNorm(); };
    double f_prev = dual_objective(alpha);
    Vec x = y;
    double last_objective = lasso_objective(phi, dict, y, lambda, x);
    const int every = std::max(cfg.trace_every, 1);

    int it = 0;
    for (; it < cfg.max_iters; ++it) {
        const Vec grad = d.transpose() * (y + d * momentum);
        const Vec alpha_next = (momentum - step * grad).cwiseMax(-lambda).cwiseMin(lambda);
        const double f = dual_objective(alpha_next);
        if (f > f_prev && t > 1.0) {
            // Restart: drop the momentum; the next step is a plain projected step from alpha.
            t = 1.0;
            momentum = alpha;
            continue;
        }
        const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
        momentum = alpha_next + ((t - 1.0) / t_next) * (alpha_next - alpha);
        alpha = alpha_next;
        t = t_next;
        f_prev = f;
        const Vec x_next = y + d * alpha;
        const double change = relative_change(x_next, x, floor);
        x = x_next;
        if ((it + 1) % every == 0) {
            const double objective = lasso_objective(phi, dict, y, lambda, x);
            rep.objective_trace.push_back(objective);
            rep.residual_trace.push_back(change);
            const double obj_change =
                std::abs(objective - last_objective) / std::max(std::abs(objective), 1e-300);
            last_objective = objective;
            if (change <= cfg.tol && obj_change <= cfg.tol) {
                rep.converged = true;
                ++it;
                break;
            }
        }
    }
    rep.iterations = it;
    rep.solution = x;
    finish(rep, phi, dict, y, cfg);
    return rep;
}

SolverReport solve_bp(const Mat& phi, const Dictionary& dict, const Vec& y, std::optional<double> lambda_small,
                      SolveConfig cfg) {
    const double scale = (phi.transpose() * y).cwiseAbs().maxCoeff();
    cfg.lambda = lambda_small.value_or(1e-6 * scale);
    if (!(cfg.lambda > 0.0)) throw UsageError("basis pursuit needs a positive lambda (is y zero?)");
    cfg.tol = std::min(cfg.tol, 1e-12);
    // At tiny lambda the l1 dual block lives on the scale lambda while the data
    // block does not; shrinking the dual step by sqrt(lambda / ||Phi* y||_inf)
    // balances them. With equal steps the iterate drifts along Ker Phi for
    // ~1/lambda iterations before the analysis term has any effect.
    cfg.step_ratio *= std::sqrt(cfg.lambda / scale);
    SolverReport rep = solve_lasso(phi, dict, y, cfg);
    rep.method = "basis-pursuit(small-lambda)";
    rep.constraint_residual = (phi * rep.solution - y).norm();
    rep.feasible = *rep.constraint_residual <= 1e-5 * y.norm();
    return rep;
}

}  // namespace cosparse
