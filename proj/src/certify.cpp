#include "cosparse/certify.hpp"

#include <algorithm>
#include <cmath>

namespace cosparse {

namespace {

// The relative default of d_support breaks down when D* x is (numerically) zero,
// so the threshold never drops below the scale of a typical solution,
// ||D|| ||Phi* y|| / ||Phi||^2.
double solution_support_tol(const Mat& phi, const Dictionary& dict, const Vec& y, const Vec& x) {
    const Vec a = dict.analysis(x);
    const double phi_norm = op_norm(phi, Norm::L2, Norm::L2);
    const double scale = phi_norm > 0.0 ? op_norm(dict.matrix(), Norm::L2, Norm::L2) *
                                              (phi.transpose() * y).norm() / (phi_norm * phi_norm)
                                        : 0.0;
    return 1e-8 * std::max(a.size() ? a.cwiseAbs().maxCoeff() : 0.0, scale);
}

// max ||D_I p||_2 over ||p||_inf <= 1. Beyond the enumeration limit the smaller of
// two upper bounds is used, which keeps the error bound valid.
double linf_to_l2(const Mat& m) {
    if (m.cols() <= 24) return op_norm(m, Norm::Linf, Norm::L2);
    return std::min(m.colwise().norm().sum(),
                    std::sqrt(static_cast<double>(m.cols())) * op_norm(m, Norm::L2, Norm::L2));
}

}  // namespace

CertificateReport first_order_certificate(const Mat& phi, const Dictionary& dict, const Vec& y,
                                          double lambda, const Vec& x, const CertifyOptions& opts) {
    if (!(lambda > 0.0)) throw UsageError("first_order_certificate: lambda must be positive");
    if (phi.cols() != dict.n() || phi.rows() != y.size() || x.size() != dict.n()) {
        throw DataError("first_order_certificate: inconsistent dimensions");
    }
    CertificateReport rep;
    const double tol = opts.support_tol ? *opts.support_tol : solution_support_tol(phi, dict, y, x);
    rep.sign = d_support(x, dict, tol);
    rep.support = rep.sign.support();
    rep.cosupport = rep.sign.cosupport();
    if (opts.compare_with) rep.sign_match = (*opts.compare_with == rep.sign);

    const Mat d_i = dict.columns(rep.support);
    const Mat d_j = dict.columns(rep.cosupport);
    Vec g = phi.transpose() * (phi * x - y);
    if (!rep.support.empty()) g += lambda * d_i * rep.sign.on_support();
    const Vec rhs = -g / lambda;

    if (d_j.cols() > 0) {
        const Vec sigma_ls = pseudoinverse(d_j) * rhs;
        rep.stationarity_residual = (d_j * sigma_ls - rhs).norm();
        // sigma is only determined up to Ker D_J; pick the element of least sup norm.
        const Mat kernel = nullspace_basis(d_j);
        const CriterionResult best = min_linf_over_subspace(sigma_ls, kernel, opts.dr);
        rep.sigma = sigma_ls - best.minimizer_u;
        rep.sigma_inf_norm = rep.sigma.cwiseAbs().maxCoeff();
    } else {
        rep.stationarity_residual = rhs.norm();
        rep.sigma = Vec();
        rep.sigma_inf_norm = 0.0;
    }
    rep.residual_tolerance = opts.residual_factor * (1.0 + (phi.transpose() * y).norm());
    rep.strictly_dual_feasible = rep.sigma_inf_norm < 1.0 - 1e-8;
    rep.certified = rep.stationarity_residual <= rep.residual_tolerance && rep.sigma_inf_norm <= 1.0 + 1e-8;

    const Mat u = cospace_basis(dict, rep.cosupport);
    rep.h_j = u.cols() == 0 || numerical_rank(phi * u) == u.cols();
    rep.unique = rep.certified && rep.strictly_dual_feasible && rep.h_j;
    return rep;
}

SmallNoiseWindow small_noise_window(const CosparseDecomposition& dec, const Vec& x0, double noise_norm,
                                    const DrParams& dr) {
    SmallNoiseWindow win;
    const Vec coeffs = dec.d_i.transpose() * x0;
    if (coeffs.size() == 0) throw PreconditionError("small-noise window: x0 has an empty D-support");
    SignVector s;
    s.entries.assign(static_cast<std::size_t>(dec.p), 0);
    for (std::size_t k = 0; k < dec.support.size(); ++k) {
        const double v = coeffs[static_cast<Eigen::Index>(k)];
        s.entries[static_cast<std::size_t>(dec.support[k])] = v > 0.0 ? 1 : (v < 0.0 ? -1 : 0);
    }
    if (s.support() != dec.support) {
        throw DataError("small-noise window: x0 vanishes on part of the decomposition's D-support");
    }
    win.ic = compute_ic(dec, s, dr).value;
    if (!(win.ic < 1.0)) {
        throw PreconditionError("small-noise theorem needs IC < 1, got IC = " + std::to_string(win.ic));
    }
    win.constants = theorem_constants(dec, win.ic);
    win.t_min = coeffs.cwiseAbs().minCoeff();
    win.lower = *win.constants.c_small * noise_norm;
    win.upper = win.t_min * *win.constants.c_tilde;
    return win;
}

SmallNoisePrediction closed_form_small_noise(const CosparseDecomposition& dec, const Vec& x0, const Vec& w,
                                             double lambda, const SignVector& s, const DrParams& dr) {
    if (w.size() != dec.q || x0.size() != dec.n) throw DataError("closed_form_small_noise: dimension mismatch");
    if (s.size() != dec.p || s.support() != dec.support) {
        throw DataError("closed_form_small_noise: sign vector does not match the D-support");
    }
    SmallNoisePrediction out;
    out.window = small_noise_window(dec, x0, w.norm(), dr);
    Vec x = x0 + dec.a_j * (dec.phi.transpose() * w);
    if (!dec.support.empty()) x -= lambda * dec.a_j * (dec.d_i * s.on_support());
    out.x = std::move(x);
    out.lambda_in_window = out.window.contains(lambda);
    if (!out.window.nonempty()) {
        out.diagnostic = "noise too large for the small-noise theorem: window (" +
                         std::to_string(out.window.lower) + ", " + std::to_string(out.window.upper) +
                         ") is empty";
    } else if (!out.lambda_in_window) {
        out.diagnostic = "lambda outside the small-noise window (" + std::to_string(out.window.lower) +
                         ", " + std::to_string(out.window.upper) + ")";
    }
    return out;
}

SignInconsistencyResult sign_inconsistency_check(const CosparseDecomposition& dec, const Dictionary& dict,
                                                 const Vec& x0, const Vec& w, double lambda,
                                                 const SolveConfig& cfg, const DrParams& dr) {
    if (!(lambda > 0.0)) throw UsageError("sign_inconsistency_check: lambda must be positive");
    const SignVector s = d_support(x0, dict);
    if (s.support() != dec.support) {
        throw DataError("sign_inconsistency_check: decomposition does not match the D-support of x0");
    }
    SignInconsistencyResult out;
    out.ic = compute_ic(dec, s, dr).value;
    if (!(out.ic > 1.0)) {
        throw PreconditionError("sign inconsistency needs IC > 1, got IC = " + std::to_string(out.ic));
    }
    const double drift = dec.b.size() ? (dec.b * w).cwiseAbs().maxCoeff() / lambda : 0.0;
    out.hypothesis = drift < out.ic - 1.0;
    SolveConfig c = cfg;
    c.lambda = lambda;
    const Vec y = dec.phi * x0 + w;
    out.solve = solve_lasso(dec.phi, dict, y, c);
    out.sign_differs =
        !(d_support(out.solve.solution, dict, solution_support_tol(dec.phi, dict, y, out.solve.solution)) == s);
    return out;
}

NoiseTheoremResult noise_theorem_check(const CosparseDecomposition& dec, const Dictionary& dict,
                                       const Vec& x0, const Vec& w, double rho, const SolveConfig& cfg,
                                       const ArcParams& arc) {
    if (!(rho > 1.0)) throw UsageError("noise theorem: rho must exceed 1");
    const double wn = w.norm();
    if (!(wn > 0.0)) {
        throw UsageError("noise theorem: w = 0 gives lambda = 0; use basis pursuit for noiseless data");
    }
    NoiseTheoremResult out;
    out.arc = compute_arc(dec, arc).value;
    if (!(out.arc < 1.0)) {
        throw PreconditionError("noise theorem needs ARC < 1, got ARC = " + std::to_string(out.arc));
    }
    out.c_j = theorem_constants(dec, out.arc).c_noise;
    out.lambda_used = rho * wn * out.c_j / (1.0 - out.arc);
    out.bound = op_norm(dec.a_j, Norm::L2, Norm::L2) * wn *
                (op_norm(dec.phi, Norm::L2, Norm::L2) +
                 rho * out.c_j / (1.0 - out.arc) * linf_to_l2(dec.d_i));

    SolveConfig c = cfg;
    c.lambda = out.lambda_used;
    const Vec y = dec.phi * x0 + w;
    out.solve = solve_lasso(dec.phi, dict, y, c);
    out.l2_error = (out.solve.solution - x0).norm();
    const IndexSet found =
        d_support(out.solve.solution, dict, solution_support_tol(dec.phi, dict, y, out.solve.solution)).support();
    out.support_included = std::includes(dec.support.begin(), dec.support.end(), found.begin(), found.end());
    return out;
}

}  // namespace cosparse
