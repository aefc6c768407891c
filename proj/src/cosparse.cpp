#include "cosparse/cosparse.hpp"

#include <algorithm>
#include <cmath>

namespace cosparse {

IndexSet SignVector::support() const {
    IndexSet out;
    for (std::size_t i = 0; i < entries.size(); ++i)
        if (entries[i] != 0) out.push_back(static_cast<int>(i));
    return out;
}

IndexSet SignVector::cosupport() const {
    IndexSet out;
    for (std::size_t i = 0; i < entries.size(); ++i)
        if (entries[i] == 0) out.push_back(static_cast<int>(i));
    return out;
}

Vec SignVector::on_support() const {
    const auto idx = support();
    Vec out(static_cast<Eigen::Index>(idx.size()));
    for (std::size_t k = 0; k < idx.size(); ++k) out[static_cast<Eigen::Index>(k)] = entries[idx[k]];
    return out;
}

SignVector SignVector::negated() const {
    SignVector out = *this;
    for (int& e : out.entries) e = -e;
    return out;
}

SignVector sign_of(const Vec& v, double tol) {
    SignVector s;
    s.entries.resize(static_cast<std::size_t>(v.size()));
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        s.entries[static_cast<std::size_t>(i)] = v[i] > tol ? 1 : (v[i] < -tol ? -1 : 0);
    }
    return s;
}

IndexSet complement(const IndexSet& idx, Eigen::Index p) {
    std::vector<bool> in(static_cast<std::size_t>(p), false);
    for (int i : idx) {
        if (i < 0 || i >= p) throw DataError("index " + std::to_string(i) + " out of range");
        in[static_cast<std::size_t>(i)] = true;
    }
    IndexSet out;
    for (Eigen::Index i = 0; i < p; ++i)
        if (!in[static_cast<std::size_t>(i)]) out.push_back(static_cast<int>(i));
    return out;
}

SignVector d_support(const Vec& x, const Dictionary& dict, std::optional<double> tol) {
    const Vec a = dict.analysis(x);
    const double t = tol.value_or(a.size() ? 1e-8 * a.cwiseAbs().maxCoeff() : 0.0);
    if (t < 0.0) throw UsageError("d_support: tolerance must be nonnegative");
    return sign_of(a, t);
}

Mat cospace_basis(const Dictionary& dict, const IndexSet& cosupport) {
    return nullspace_basis(dict.columns(cosupport).transpose());
}

bool check_h0(const Dictionary& dict, const Mat& phi) {
    if (phi.cols() != dict.n()) throw DataError("check_h0: Phi and D act on different dimensions");
    Mat stacked(phi.rows() + dict.p(), dict.n());
    stacked << phi, dict.matrix().transpose();
    return numerical_rank(stacked) == dict.n();
}

CosparseDecomposition build_decomposition(const Dictionary& dict, const Mat& phi,
                                          const IndexSet& cosupport) {
    if (phi.cols() != dict.n()) {
        throw DataError("build_decomposition: Phi has " + std::to_string(phi.cols()) +
                        " columns but the dictionary acts on R^" + std::to_string(dict.n()));
    }
    CosparseDecomposition dec;
    dec.n = dict.n();
    dec.p = dict.p();
    dec.q = phi.rows();
    dec.cosupport = cosupport;
    std::sort(dec.cosupport.begin(), dec.cosupport.end());
    dec.support = complement(dec.cosupport, dec.p);
    dec.phi = phi;
    dec.d_i = dict.columns(dec.support);
    dec.d_j = dict.columns(dec.cosupport);
    dec.d_j_pinv = pseudoinverse(dec.d_j);
    dec.u_j = nullspace_basis(dec.d_j.transpose());
    dec.kernel_d_j = dec.d_j.cols() ? nullspace_basis(dec.d_j) : Mat(0, 0);

    const auto n = dec.n;
    const auto k = dec.u_j.cols();
    if (k == 0) {
        dec.a_j = Mat::Zero(n, n);
    } else {
        const Mat phi_u = phi * dec.u_j;
        const auto rank = numerical_rank(phi_u);
        if (rank < k) {
            throw PreconditionError("condition H_J violated: Ker Phi intersects the cospace in dimension " +
                                    std::to_string(k - rank) + " (cospace dimension " +
                                    std::to_string(k) + ")");
        }
        const Mat gram = phi_u.transpose() * phi_u;
        Eigen::LLT<Mat> llt(gram);
        if (llt.info() != Eigen::Success) {
            throw PreconditionError("condition H_J violated: U_J* Phi* Phi U_J is not positive definite");
        }
        dec.a_j = dec.u_j * llt.solve(dec.u_j.transpose());
        dec.a_j = 0.5 * (dec.a_j + dec.a_j.transpose()).eval();
    }

    const Mat gram_phi = phi.transpose() * phi;
    const Mat omega_tilde = (gram_phi * dec.a_j - Mat::Identity(n, n)) * dec.d_i;
    const Mat b_tilde =
        phi.transpose() * (phi * dec.a_j * phi.transpose() - Mat::Identity(dec.q, dec.q));
    dec.omega = dec.d_j_pinv * omega_tilde;
    dec.b = dec.d_j_pinv * b_tilde;
    return dec;
}

CosparseDecomposition build_decomposition_for(const Dictionary& dict, const Mat& phi, const Vec& x) {
    return build_decomposition(dict, phi, d_support(x, dict).cosupport());
}

TheoremConstants theorem_constants(const CosparseDecomposition& dec, double ic) {
    TheoremConstants c;
    c.c_noise = op_norm(dec.b, Norm::L2, Norm::Linf);
    if (ic < 1.0) {
        const double c_small = c.c_noise / (1.0 - ic);
        const double di_a = op_norm(dec.d_i.transpose() * dec.a_j, Norm::Linf, Norm::Linf);
        const double phi_adj = op_norm(Mat(dec.phi.transpose()), Norm::L2, Norm::Linf);
        const double d_i = op_norm(dec.d_i, Norm::Linf, Norm::Linf);
        const double denom = di_a * ((c_small > 0.0 ? phi_adj / c_small : INFINITY) + d_i);
        c.c_small = c_small;
        c.c_tilde = denom > 0.0 ? 1.0 / denom : INFINITY;
    }
    return c;
}

}  // namespace cosparse
