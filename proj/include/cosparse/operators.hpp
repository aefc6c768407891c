#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <memory>
#include <string>

#include <Eigen/Dense>

#include "cosparse/errors.hpp"

namespace cosparse {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// Linear map R^in_dim -> R^out_dim together with its adjoint.
///
/// Operators are immutable value types; copies share the underlying
/// implementation, so they are cheap to pass around and safe to use from
/// several threads at once.
class LinearOperator {
public:
    using Map = std::function<Vec(const Vec&)>;

    LinearOperator(Eigen::Index in_dim, Eigen::Index out_dim, Map apply, Map adjoint,
                   std::string name = "op");

    Eigen::Index in_dim() const noexcept { return in_dim_; }
    Eigen::Index out_dim() const noexcept { return out_dim_; }
    const std::string& name() const noexcept { return name_; }

    Vec apply(const Vec& x) const;
    Vec adjoint_apply(const Vec& z) const;

    /// Dense matrix whose columns are apply(e_j).
    Mat materialize() const;

    /// The adjoint as an operator in its own right.
    LinearOperator adjoint() const;

private:
    Eigen::Index in_dim_;
    Eigen::Index out_dim_;
    std::shared_ptr<const Map> apply_;
    std::shared_ptr<const Map> adjoint_;
    std::string name_;
};

LinearOperator dense_operator(Mat m, std::string name = "dense");
LinearOperator identity_operator(Eigen::Index n);
LinearOperator scaled(const LinearOperator& a, double factor);

/// x -> a.apply(b.apply(x)); requires b.out_dim == a.in_dim.
LinearOperator compose(const LinearOperator& a, const LinearOperator& b);

/// [A B] acting on stacked inputs (u; v) -> A u + B v. Both must share out_dim.
LinearOperator hconcat(const LinearOperator& a, const LinearOperator& b);

/// x -> (A x; B x). Both must share in_dim.
LinearOperator vstack(const LinearOperator& a, const LinearOperator& b);

/// Periodic convolution (K x)_i = sum_k kernel[k] x_{(i - k + center) mod n}
/// where kernel index `center` holds offset 0.
LinearOperator circular_convolution(Eigen::Index n, Vec kernel, Eigen::Index center,
                                    std::string name = "circconv");

/// Normalized Gaussian kernel truncated at +-ceil(4 sigma), applied circularly.
LinearOperator circular_gaussian_blur(Eigen::Index n, double sigma);

/// q x n matrix with i.i.d. standard normal entries from a seeded generator.
Mat gaussian_random_matrix(Eigen::Index q, Eigen::Index n, std::uint64_t seed);

enum class Norm { L2, Linf };

/// Induced norm max ||M x||_q / ||x||_p. Supported (p, q): (inf, inf), (2, inf), (2, 2),
/// and (inf, 2) by enumeration for at most 24 columns.
double op_norm(const Mat& m, Norm p, Norm q);

/// Largest singular value of a matrix-free operator via power iteration on A* A.
double spectral_norm(const LinearOperator& a, int max_iters = 10000, double rel_tol = 1e-9);

/// max(rows, cols) * eps * sigma_max.
double rank_tolerance(const Mat& m);

Eigen::Index numerical_rank(const Mat& m);

/// Moore-Penrose pseudoinverse; singular values at or below rank_tolerance are dropped.
Mat pseudoinverse(const Mat& m);

/// Orthonormal basis (columns) of Ker m, decided at rank_tolerance.
/// A matrix with zero rows has the whole space as its kernel.
Mat nullspace_basis(const Mat& m);

/// Shortest decimal text that parses back to exactly v.
std::string shortest_repr(double v);

/// Write one row per line, comma separated, 17 significant digits.
void write_csv(std::ostream& os, const Mat& m);
Mat read_csv_matrix(std::istream& is);

/// Signals are stored one value per line.
void write_signal_csv(std::ostream& os, const Vec& v);
Vec read_signal_csv(std::istream& is);
Vec read_signal_file(const std::string& path);
void write_signal_file(const std::string& path, const Vec& v);

}  // namespace cosparse
