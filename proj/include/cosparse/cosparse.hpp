#pragma once

#include <optional>
#include <vector>

#include "cosparse/dictionaries.hpp"

namespace cosparse {

/// Sorted 0-based atom indices.
using IndexSet = std::vector<int>;

/// Entries in {-1, 0, +1}, one per atom.
struct SignVector {
    std::vector<int> entries;

    Eigen::Index size() const { return static_cast<Eigen::Index>(entries.size()); }
    IndexSet support() const;
    IndexSet cosupport() const;
    /// Signs restricted to the support, as a real vector.
    Vec on_support() const;
    SignVector negated() const;

    bool operator==(const SignVector&) const = default;
};

SignVector sign_of(const Vec& v, double tol);

/// Complement of idx in {0, ..., p-1}.
IndexSet complement(const IndexSet& idx, Eigen::Index p);

/// sign(D* x) with entries of magnitude <= tol treated as zero.
/// Without an explicit tol, 1e-8 * ||D* x||_inf is used.
SignVector d_support(const Vec& x, const Dictionary& dict, std::optional<double> tol = std::nullopt);

/// Orthonormal basis of the cospace G_J = Ker D_J*.
Mat cospace_basis(const Dictionary& dict, const IndexSet& cosupport);

/// Ker Phi intersected with Ker D* is trivial.
bool check_h0(const Dictionary& dict, const Mat& phi);

/// Everything the recovery theorems need for a fixed cosupport J:
/// the cospace, A_J, and the matrices Omega^[J] and B^[J].
struct CosparseDecomposition {
    Eigen::Index n = 0;
    Eigen::Index p = 0;
    Eigen::Index q = 0;
    IndexSet support;    // I
    IndexSet cosupport;  // J
    Mat phi;             // q x n
    Mat d_i;             // n x |I|
    Mat d_j;             // n x |J|
    Mat d_j_pinv;        // |J| x n
    Mat u_j;             // n x dim G_J, orthonormal
    Mat kernel_d_j;      // |J| x dim Ker D_J, orthonormal
    Mat a_j;             // n x n
    Mat omega;           // |J| x |I|
    Mat b;               // |J| x q

    Eigen::Index cospace_dim() const { return u_j.cols(); }
    Eigen::Index kernel_dim() const { return kernel_d_j.cols(); }
};

/// Builds the decomposition for cosupport J. Throws PreconditionError when
/// (H_J) fails, reporting dim(Ker Phi /\ G_J).
CosparseDecomposition build_decomposition(const Dictionary& dict, const Mat& phi,
                                          const IndexSet& cosupport);

/// Same, with J taken as the D-cosupport of x.
CosparseDecomposition build_decomposition_for(const Dictionary& dict, const Mat& phi, const Vec& x);

/// Constants of the small-noise and bounded-noise recovery theorems.
struct TheoremConstants {
    /// ||B^[J]||_{2,inf}; the constant of the bounded-noise theorem.
    double c_noise = 0.0;
    /// Small-noise pair, present only when IC < 1.
    std::optional<double> c_small;
    std::optional<double> c_tilde;
};

/// `ic` is IC(s) for the sign vector of interest; the small-noise pair is
/// left empty when ic >= 1.
TheoremConstants theorem_constants(const CosparseDecomposition& dec, double ic);

}  // namespace cosparse
