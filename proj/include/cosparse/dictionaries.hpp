#pragma once

#include <string>
#include <vector>

#include "cosparse/operators.hpp"

namespace cosparse {

enum class DictionaryKind { Identity, TvDiff, HaarShiftInvariant, Fused };

/// Analysis dictionary D: P atoms in R^N, stored as the N x P matrix whose
/// columns are the atoms. analysis(x) = D* x, synthesis(a) = D a.
class Dictionary {
public:
    Dictionary(DictionaryKind kind, Mat atoms, std::string label);

    DictionaryKind kind() const noexcept { return kind_; }
    const std::string& label() const noexcept { return label_; }

    Eigen::Index n() const noexcept { return atoms_->rows(); }
    Eigen::Index p() const noexcept { return atoms_->cols(); }

    /// N x P matrix of atoms.
    const Mat& matrix() const noexcept { return *atoms_; }

    Vec analysis(const Vec& x) const;
    Vec synthesis(const Vec& a) const;

    /// Synthesis direction R^P -> R^N; its adjoint is the analysis operator.
    LinearOperator as_operator() const;

    /// N x |idx| submatrix of the atoms listed in idx.
    Mat columns(const std::vector<int>& idx) const;

private:
    DictionaryKind kind_;
    std::shared_ptr<const Mat> atoms_;
    std::string label_;
};

/// Forward finite differences, open boundary: (D* x)_i = x_{i+1} - x_i.
Dictionary make_tv(Eigen::Index n);

/// Shift-invariant Haar dictionary with scales 0..j_max, periodic boundary.
/// Atom index = scale * n + position. At scale j the analysis coefficient is
///   (D* x)_i = 2^{-tau (j+1)} (sum_{k=0}^{2^j-1} x_{i+k} - sum_{k=1}^{2^j} x_{i-k}),
/// indices taken mod n.
Dictionary make_haar(Eigen::Index n, int j_max, double tau);

/// [D_tv  epsilon Id]: P = (n - 1) + n.
Dictionary make_fused(Eigen::Index n, double epsilon);

Dictionary make_identity(Eigen::Index n);

/// Parse `tv`, `id`, `haar:jmax=4,tau=0.5` or `fused:eps=0.1` for signals of length n.
Dictionary parse_dictionary(const std::string& spec, Eigen::Index n);

/// The spec with defaults filled in, e.g. `haar` -> `haar:jmax=4,tau=0.5`.
std::string canonical_dictionary_spec(const std::string& spec);

}  // namespace cosparse
