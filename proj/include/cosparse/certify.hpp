#pragma once

#include <optional>
#include <string>

#include "cosparse/criteria.hpp"
#include "cosparse/solvers.hpp"

namespace cosparse {

/// First-order optimality check of a candidate Lasso solution:
/// Phi*(Phi x - y) + lambda D_I s_I + lambda D_J sigma = 0 with ||sigma||_inf <= 1.
struct CertificateReport {
    SignVector sign;
    IndexSet support;
    IndexSet cosupport;
    Vec sigma;
    double stationarity_residual = 0.0;
    double residual_tolerance = 0.0;
    double sigma_inf_norm = 0.0;
    bool strictly_dual_feasible = false;
    /// Stationarity residual within tolerance and ||sigma||_inf <= 1 + 1e-8.
    bool certified = false;
    /// Phi is injective on the cospace of the candidate.
    bool h_j = false;
    /// certified, strictly dual feasible and (H_J): the minimizer is unique.
    bool unique = false;
    /// Present when a reference sign vector was supplied.
    std::optional<bool> sign_match;
};

struct CertifyOptions {
    /// Support threshold; default 1e-8 max(||D* x||_inf, ||D|| ||Phi* y|| / ||Phi||^2).
    std::optional<double> support_tol;
    /// Stationarity tolerance factor: residual <= factor (1 + ||Phi* y||_2).
    double residual_factor = 1e-6;
    std::optional<SignVector> compare_with;
    DrParams dr;
};

CertificateReport first_order_certificate(const Mat& phi, const Dictionary& dict, const Vec& y,
                                          double lambda, const Vec& x, const CertifyOptions& opts = {});

/// lambda range of the small-noise theorem, (c_J ||w||, T c~_J).
struct SmallNoiseWindow {
    double ic = 0.0;
    double t_min = 0.0;  // min_i |D_I* x0|_i
    double lower = 0.0;
    double upper = 0.0;
    TheoremConstants constants;

    bool nonempty() const { return lower < upper; }
    bool contains(double lambda) const { return lower < lambda && lambda < upper; }
    double midpoint() const { return 0.5 * (lower + upper); }
};

/// Throws PreconditionError when IC(sign(D* x0)) >= 1.
SmallNoiseWindow small_noise_window(const CosparseDecomposition& dec, const Vec& x0, double noise_norm,
                                    const DrParams& dr = {});

struct SmallNoisePrediction {
    Vec x;
    SmallNoiseWindow window;
    bool lambda_in_window = false;
    /// Empty when the hypotheses hold; otherwise explains which one fails.
    std::string diagnostic;
};

/// x0 + A_J Phi* w - lambda A_J D_I s_I. The formula is always evaluated; the
/// diagnostic reports an empty window or a lambda outside it.
SmallNoisePrediction closed_form_small_noise(const CosparseDecomposition& dec, const Vec& x0, const Vec& w,
                                             double lambda, const SignVector& s, const DrParams& dr = {});

struct SignInconsistencyResult {
    double ic = 0.0;
    /// (1/lambda) ||B^[J] w||_inf < IC - 1.
    bool hypothesis = false;
    bool sign_differs = false;
    SolverReport solve;

    bool conclusion_observed() const { return hypothesis && sign_differs; }
};

/// Solves the Lasso for y = Phi x0 + w and checks that its sign vector differs
/// from sign(D* x0). Throws PreconditionError when IC <= 1.
SignInconsistencyResult sign_inconsistency_check(const CosparseDecomposition& dec, const Dictionary& dict,
                                                 const Vec& x0, const Vec& w, double lambda,
                                                 const SolveConfig& cfg = {}, const DrParams& dr = {});

struct NoiseTheoremResult {
    double arc = 0.0;
    double c_j = 0.0;
    double lambda_used = 0.0;
    double l2_error = 0.0;
    double bound = 0.0;
    bool support_included = false;
    SolverReport solve;

    bool bound_holds() const { return l2_error <= bound + 1e-6; }
};

/// lambda = rho ||w|| c_J / (1 - ARC(I)); solves and checks D-support inclusion
/// and the l2 bound. Throws PreconditionError when ARC >= 1, UsageError for
/// rho <= 1 or w = 0.
NoiseTheoremResult noise_theorem_check(const CosparseDecomposition& dec, const Dictionary& dict,
                                       const Vec& x0, const Vec& w, double rho, const SolveConfig& cfg = {},
                                       const ArcParams& arc = {});

}  // namespace cosparse
