#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cosparse/cosparse.hpp"

namespace cosparse {

struct SolveConfig {
    double lambda = 0.0;
    int max_iters = 100000;
    /// Relative tolerance on both the iterate change and the objective change.
    double tol = 1e-10;
    /// Over-relaxation of the primal extrapolation, in [0, 1].
    double theta = 1.0;
    /// Ratio between dual and primal steps: sigma = r c / ||K||, tau = c / (r ||K||), c^2 = 0.99.
    double step_ratio = 1.0;
    /// Finish by solving exactly on the detected face and keep the result if it is certified.
    bool polish = true;
    /// Starting primal point (zero when absent).
    std::optional<Vec> x_init;
    /// Objective is recorded every this many iterations.
    int trace_every = 10;
};

struct SolverReport {
    Vec solution;
    double objective = 0.0;
    int iterations = 0;
    bool converged = false;
    /// Relative iterate change at each recorded iteration.
    std::vector<double> residual_trace;
    /// Objective at each recorded iteration.
    std::vector<double> objective_trace;
    /// The iterate before face polishing.
    Vec raw_solution;
    bool polished = false;
    std::string method;
    /// Basis Pursuit only.
    std::optional<double> constraint_residual;
    std::optional<bool> feasible;
};

/// 1/2 ||y - Phi x||^2 + lambda ||D* x||_1.
double lasso_objective(const Mat& phi, const Dictionary& dict, const Vec& y, double lambda, const Vec& x);

/// Componentwise sign(x_i) max(|x_i| - t, 0).
Vec soft_threshold(const Vec& x, double t);

/// Primal-dual (relaxed Arrow-Hurwicz / Chambolle-Pock) iteration on
/// K = (Phi; D*) with F(g, u) = 1/2 ||y - g||^2 + lambda ||u||_1.
/// Throws PreconditionError when Ker Phi /\ Ker D* is nontrivial.
SolverReport solve_lasso(const LinearOperator& phi, const Dictionary& dict, const Vec& y,
                         const SolveConfig& cfg);
SolverReport solve_lasso(const Mat& phi, const Dictionary& dict, const Vec& y, const SolveConfig& cfg);

/// Phi = Id: accelerated projected gradient with restart on the dual
/// min_{||a||_inf <= lambda} ||y + D a||^2, primal recovered as y + D a.
SolverReport solve_denoise_dual(const Dictionary& dict, const Vec& y, const SolveConfig& cfg);

/// Basis Pursuit min ||D* x||_1 s.t. Phi x = y through the Lasso at a small
/// lambda (default 1e-6 ||Phi* y||_inf). Reports the constraint residual and
/// flags residuals above 1e-5 ||y||_2 as infeasible.
SolverReport solve_bp(const Mat& phi, const Dictionary& dict, const Vec& y,
                      std::optional<double> lambda_small = std::nullopt, SolveConfig cfg = {});

/// Solution of the Lasso restricted to the face with D-support I and signs s_I:
/// x = A_J (Phi* y - lambda D_I s_I). Empty when (H_J) fails.
std::optional<Vec> face_solution(const Mat& phi, const Dictionary& dict, const Vec& y, double lambda,
                                 const SignVector& s);

}  // namespace cosparse
