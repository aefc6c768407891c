#include "cosparse/operators.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace cosparse {

namespace {

void require_dim(const Vec& v, Eigen::Index expected, const std::string& who) {
    if (v.size() != expected) {
        throw DataError(who + ": expected vector of length " + std::to_string(expected) +
                        ", got " + std::to_string(v.size()));
    }
}

Eigen::JacobiSVD<Mat> thin_svd(const Mat& m) {
    return Eigen::JacobiSVD<Mat>(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
}

}  // namespace

LinearOperator::LinearOperator(Eigen::Index in_dim, Eigen::Index out_dim, Map apply, Map adjoint,
                               std::string name)
    : in_dim_(in_dim),
      out_dim_(out_dim),
      apply_(std::make_shared<const Map>(std::move(apply))),
      adjoint_(std::make_shared<const Map>(std::move(adjoint))),
      name_(std::move(name)) {
    if (in_dim <= 0 || out_dim <= 0) {
        throw DataError("linear operator dimensions must be positive");
    }
}

Vec LinearOperator::apply(const Vec& x) const {
    require_dim(x, in_dim_, name_ + ".apply");
    return (*apply_)(x);
}

Vec LinearOperator::adjoint_apply(const Vec& z) const {
    require_dim(z, out_dim_, name_ + ".adjoint_apply");
    return (*adjoint_)(z);
}

Mat LinearOperator::materialize() const {
    Mat m(out_dim_, in_dim_);
    Vec e = Vec::Zero(in_dim_);
    for (Eigen::Index j = 0; j < in_dim_; ++j) {
        e[j] = 1.0;
        m.col(j) = (*apply_)(e);
        e[j] = 0.0;
    }
    return m;
}

LinearOperator LinearOperator::adjoint() const {
    auto fwd = apply_;
    auto adj = adjoint_;
    return LinearOperator(
        out_dim_, in_dim_, [adj](const Vec& z) { return (*adj)(z); },
        [fwd](const Vec& x) { return (*fwd)(x); }, name_ + "*");
}

LinearOperator dense_operator(Mat m, std::string name) {
    auto shared = std::make_shared<const Mat>(std::move(m));
    const auto rows = shared->rows();
    const auto cols = shared->cols();
    return LinearOperator(
        cols, rows, [shared](const Vec& x) -> Vec { return (*shared) * x; },
        [shared](const Vec& z) -> Vec { return shared->transpose() * z; }, std::move(name));
}

LinearOperator identity_operator(Eigen::Index n) {
    return LinearOperator(
        n, n, [](const Vec& x) { return x; }, [](const Vec& z) { return z; }, "id");
}

LinearOperator scaled(const LinearOperator& a, double factor) {
    return LinearOperator(
        a.in_dim(), a.out_dim(), [a, factor](const Vec& x) -> Vec { return factor * a.apply(x); },
        [a, factor](const Vec& z) -> Vec { return factor * a.adjoint_apply(z); },
        a.name() + "*scaled");
}

LinearOperator compose(const LinearOperator& a, const LinearOperator& b) {
    if (b.out_dim() != a.in_dim()) {
        throw DataError("compose: dimension mismatch (" + b.name() + " outputs " +
                        std::to_string(b.out_dim()) + ", " + a.name() + " expects " +
                        std::to_string(a.in_dim()) + ")");
    }
    return LinearOperator(
        b.in_dim(), a.out_dim(), [a, b](const Vec& x) { return a.apply(b.apply(x)); },
        [a, b](const Vec& z) { return b.adjoint_apply(a.adjoint_apply(z)); },
        a.name() + "." + b.name());
}

LinearOperator hconcat(const LinearOperator& a, const LinearOperator& b) {
    if (a.out_dim() != b.out_dim()) {
        throw DataError("hconcat: operators must share their output dimension");
    }
    const auto na = a.in_dim();
    const auto nb = b.in_dim();
    return LinearOperator(
        na + nb, a.out_dim(),
        [a, b, na, nb](const Vec& x) -> Vec {
            return a.apply(x.head(na)) + b.apply(x.tail(nb));
        },
        [a, b, na, nb](const Vec& z) -> Vec {
            Vec out(na + nb);
            out.head(na) = a.adjoint_apply(z);
            out.tail(nb) = b.adjoint_apply(z);
            return out;
        },
        "[" + a.name() + " " + b.name() + "]");
}

LinearOperator vstack(const LinearOperator& a, const LinearOperator& b) {
    if (a.in_dim() != b.in_dim()) {
        throw DataError("vstack: operators must share their input dimension");
    }
    const auto ma = a.out_dim();
    const auto mb = b.out_dim();
    return LinearOperator(
        a.in_dim(), ma + mb,
        [a, b, ma, mb](const Vec& x) -> Vec {
            Vec out(ma + mb);
            out.head(ma) = a.apply(x);
            out.tail(mb) = b.apply(x);
            return out;
        },
        [a, b, ma, mb](const Vec& z) -> Vec {
            return a.adjoint_apply(z.head(ma)) + b.adjoint_apply(z.tail(mb));
        },
        "(" + a.name() + "; " + b.name() + ")");
}

LinearOperator circular_convolution(Eigen::Index n, Vec kernel, Eigen::Index center,
                                    std::string name) {
    if (n <= 0 || kernel.size() == 0 || center < 0 || center >= kernel.size()) {
        throw DataError("circular_convolution: invalid kernel layout");
    }
    auto k = std::make_shared<const Vec>(std::move(kernel));
    auto wrap = [n](Eigen::Index i) { return ((i % n) + n) % n; };
    return LinearOperator(
        n, n,
        [k, center, n, wrap](const Vec& x) -> Vec {
            Vec out = Vec::Zero(n);
            for (Eigen::Index t = 0; t < k->size(); ++t) {
                const Eigen::Index offset = t - center;
                const double w = (*k)[t];
                for (Eigen::Index i = 0; i < n; ++i) out[i] += w * x[wrap(i - offset)];
            }
            return out;
        },
        [k, center, n, wrap](const Vec& z) -> Vec {
            Vec out = Vec::Zero(n);
            for (Eigen::Index t = 0; t < k->size(); ++t) {
                const Eigen::Index offset = t - center;
                const double w = (*k)[t];
                for (Eigen::Index j = 0; j < n; ++j) out[j] += w * z[wrap(j + offset)];
            }
            return out;
        },
        std::move(name));
}

LinearOperator circular_gaussian_blur(Eigen::Index n, double sigma) {
    if (!(sigma > 0.0) || !std::isfinite(sigma)) {
        throw UsageError("circular_gaussian_blur: sigma must be positive");
    }
    if (n < 3) {
        throw UsageError("circular_gaussian_blur: n must be at least 3");
    }
    const auto radius = static_cast<Eigen::Index>(std::ceil(4.0 * sigma));
    Vec kernel(2 * radius + 1);
    for (Eigen::Index k = -radius; k <= radius; ++k) {
        const double d = static_cast<double>(k);
        kernel[k + radius] = std::exp(-d * d / (2.0 * sigma * sigma));
    }
    kernel /= kernel.sum();
    return circular_convolution(n, std::move(kernel), radius, "blur");
}

Mat gaussian_random_matrix(Eigen::Index q, Eigen::Index n, std::uint64_t seed) {
    if (q <= 0 || n <= 0) {
        throw UsageError("gaussian_random_matrix: dimensions must be positive");
    }
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    Mat m(q, n);
    // Fill row by row so the stream order matches the row-major CSV layout.
    for (Eigen::Index i = 0; i < q; ++i)
        for (Eigen::Index j = 0; j < n; ++j) m(i, j) = normal(rng);
    return m;
}

double op_norm(const Mat& m, Norm p, Norm q) {
    if (m.size() == 0) return 0.0;
    if (p == Norm::Linf && q == Norm::Linf) {
        return m.cwiseAbs().rowwise().sum().maxCoeff();
    }
    if (p == Norm::L2 && q == Norm::Linf) {
        return m.rowwise().norm().maxCoeff();
    }
    if (p == Norm::L2 && q == Norm::L2) {
        if (std::max(m.rows(), m.cols()) <= 512) {
            return Eigen::JacobiSVD<Mat>(m).singularValues()[0];
        }
        return spectral_norm(dense_operator(m));
    }
    if (p == Norm::Linf && q == Norm::L2) {
        // Convex in x, so the maximum over the unit cube sits at a vertex.
        if (m.cols() > 24) throw UsageError("op_norm: (inf, 2) is enumerated exactly and limited to 24 columns");
        Vec x = Vec::Ones(m.cols());
        Vec mx = m * x;
        double best = mx.squaredNorm();
        // Gray code: each step flips one sign.
        for (std::uint64_t k = 1; k < (std::uint64_t{1} << m.cols()); ++k) {
            const int bit = std::countr_zero(k);
            x[bit] = -x[bit];
            mx += 2.0 * x[bit] * m.col(bit);
            best = std::max(best, mx.squaredNorm());
        }
        return std::sqrt(best);
    }
    throw UsageError("op_norm: unsupported (p, q) pair; use (inf, inf), (2, inf), (2, 2) or (inf, 2)");
}

double spectral_norm(const LinearOperator& a, int max_iters, double rel_tol) {
    // Deterministic start vector with no special alignment to common structures.
    Vec v(a.in_dim());
    for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = 1.0 + 0.5 * std::sin(1.0 + 3.0 * i);
    v.normalize();
    double estimate = 0.0;
    for (int it = 0; it < max_iters; ++it) {
        Vec w = a.adjoint_apply(a.apply(v));
        const double nw = w.norm();
        if (nw == 0.0) return 0.0;
        const double next = std::sqrt(nw);
        v = w / nw;
        if (std::abs(next - estimate) <= rel_tol * next) return next;
        estimate = next;
    }
    return estimate;
}

double rank_tolerance(const Mat& m) {
    if (m.size() == 0) return 0.0;
    const double smax = Eigen::JacobiSVD<Mat>(m).singularValues()[0];
    return static_cast<double>(std::max(m.rows(), m.cols())) *
           std::numeric_limits<double>::epsilon() * smax;
}

Eigen::Index numerical_rank(const Mat& m) {
    if (m.size() == 0) return 0;
    const Vec s = Eigen::JacobiSVD<Mat>(m).singularValues();
    const double tol = static_cast<double>(std::max(m.rows(), m.cols())) *
                       std::numeric_limits<double>::epsilon() * s[0];
    return (s.array() > tol).count();
}

Mat pseudoinverse(const Mat& m) {
    if (m.size() == 0) return Mat::Zero(m.cols(), m.rows());
    const auto svd = thin_svd(m);
    const Vec& s = svd.singularValues();
    const double tol = static_cast<double>(std::max(m.rows(), m.cols())) *
                       std::numeric_limits<double>::epsilon() * s[0];
    Vec inv = Vec::Zero(s.size());
    for (Eigen::Index i = 0; i < s.size(); ++i)
        if (s[i] > tol) inv[i] = 1.0 / s[i];
    return svd.matrixV() * inv.asDiagonal() * svd.matrixU().transpose();
}

Mat nullspace_basis(const Mat& m) {
    const auto n = m.cols();
    if (m.rows() == 0) return Mat::Identity(n, n);
    Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeFullV);
    const Vec& s = svd.singularValues();
    const double tol = static_cast<double>(std::max(m.rows(), m.cols())) *
                       std::numeric_limits<double>::epsilon() * (s.size() ? s[0] : 0.0);
    Eigen::Index rank = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i)
        if (s[i] > tol) ++rank;
    return svd.matrixV().rightCols(n - rank);
}

std::string shortest_repr(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

void write_csv(std::ostream& os, const Mat& m) {
    char buf[32];
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            std::snprintf(buf, sizeof buf, "%.17g", m(i, j));
            if (j) os << ',';
            os << buf;
        }
        os << '\n';
    }
}

Mat read_csv_matrix(std::istream& is) {
    std::vector<std::vector<double>> rows;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::vector<double> row;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            std::size_t used = 0;
            try {
                row.push_back(std::stod(cell, &used));
            } catch (const std::exception&) {
                used = 0;
            }
            while (used < cell.size() && std::isspace(static_cast<unsigned char>(cell[used]))) ++used;
            if (used == 0 || used != cell.size()) throw DataError("CSV: cannot parse number '" + cell + "'");
        }
        if (!rows.empty() && row.size() != rows.front().size()) {
            throw DataError("CSV: ragged rows");
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) return Mat();
    Mat m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows[0].size()));
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows[i].size(); ++j)
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
    return m;
}

void write_signal_csv(std::ostream& os, const Vec& v) { write_csv(os, Mat(v)); }

Vec read_signal_csv(std::istream& is) {
    const Mat m = read_csv_matrix(is);
    if (m.cols() != 1 || m.rows() == 0) {
        throw DataError("signal CSV must hold one value per line");
    }
    return m.col(0);
}

Vec read_signal_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open signal file: " + path);
    return read_signal_csv(in);
}

void write_signal_file(const std::string& path, const Vec& v) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write file: " + path);
    write_signal_csv(out, v);
}

}  // namespace cosparse
