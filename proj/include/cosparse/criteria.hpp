#pragma once

#include <optional>

#include "cosparse/cosparse.hpp"

namespace cosparse {

/// Douglas-Rachford settings for the ell-infinity minimization over Ker D_J.
struct DrParams {
    double gamma = 1.0;
    double relaxation = 1.0;
    /// Stop once the objective moves by at most this much between iterations...
    double objective_tol = 1e-10;
    /// ...and the two prox points agree to this in the sup norm.
    double residual_tol = 1e-9;
    int max_iters = 50000;
};

struct CriterionResult {
    double value = 0.0;
    Vec minimizer_u;  // element of Ker D_J attaining `value`
    int iterations = 0;
    bool converged = true;
    /// ARC only: the sign pattern p_I attaining the maximum.
    std::optional<Vec> vertex;
};

/// Euclidean projection onto {z : ||z||_1 <= radius}.
Vec project_l1_ball(const Vec& x, double radius = 1.0);

/// argmin_z 1/2 ||z - x||^2 + gamma ||z||_inf, through the Moreau identity.
Vec prox_linf(const Vec& x, double gamma);

/// min_{u in span(kernel)} ||c - u||_inf, kernel having orthonormal columns.
/// The returned value never exceeds ||c||_inf (u = 0 is always a candidate).
CriterionResult min_linf_over_subspace(const Vec& c, const Mat& kernel, const DrParams& params = {});

/// IC(s) = min_{u in Ker D_J} ||Omega^[J] s_I - u||_inf. `s` must be supported on I = J^c.
CriterionResult compute_ic(const CosparseDecomposition& dec, const SignVector& s,
                           const DrParams& params = {});

/// Same, for an arbitrary vector p_I (not necessarily a sign pattern).
CriterionResult ic_of_vector(const CosparseDecomposition& dec, const Vec& p_i,
                             const DrParams& params = {});

/// Synthesis (Fuchs) criterion ||Psi_J* Psi_I^{+,*} s_I||_inf; Psi_I must have full column rank.
double compute_ic_fuchs(const Mat& psi, const SignVector& s);

/// Exact recovery coefficient ||Psi_J* Psi_I^{+,*}||_{inf,inf}.
double compute_erc(const Mat& psi, const IndexSet& support);

struct ArcParams {
    int cap = 16;
    /// 0 selects the COSPARSE_THREADS environment variable, else the hardware concurrency.
    int threads = 0;
    DrParams dr;
};

/// Worst-case IC over the vertices of the unit cube on I. Refuses |I| > cap.
CriterionResult compute_arc(const CosparseDecomposition& dec, const ArcParams& params = {});

/// ||Omega^[J]||_{inf,inf}.
double compute_warc(const CosparseDecomposition& dec);

/// Closed-form TV denoising dual vector: m_I = s_I and m_J linearly
/// interpolates between consecutive anchors, with virtual zero anchors at
/// both ends of the signal.
struct TvDual {
    Vec m;
    double ic = 0.0;
};
TvDual tv_dual_vector(const Vec& x);

/// Worker count from COSPARSE_THREADS, falling back to the hardware concurrency.
int default_thread_count();

}  // namespace cosparse
