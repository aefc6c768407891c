#include <sstream>

#include "doctest.h"
#include "helpers.hpp"

using namespace cosparse;

TEST_SUITE("operators") {

TEST_CASE("adjoint identity <Ax, z> = <x, A* z> for every builder") {
    std::mt19937_64 rng(11);
    const Mat m = testutil::random_mat(rng, 5, 7);
    const std::vector<LinearOperator> ops = {
        dense_operator(m),
        identity_operator(7),
        scaled(dense_operator(m), -2.5),
        compose(dense_operator(m), identity_operator(7)),
        vstack(identity_operator(7), dense_operator(m)),
        circular_gaussian_blur(7, 0.8),
        circular_convolution(7, Vec::LinSpaced(3, 1.0, 3.0), 1),
    };
    for (const auto& op : ops) {
        const Vec x = testutil::random_vec(rng, op.in_dim());
        const Vec z = testutil::random_vec(rng, op.out_dim());
        CHECK(op.apply(x).dot(z) == doctest::Approx(x.dot(op.adjoint_apply(z))).epsilon(1e-12));
        CHECK((op.adjoint().materialize() - op.materialize().transpose()).norm() < 1e-12);
    }
}

TEST_CASE("hconcat acts on stacked inputs") {
    std::mt19937_64 rng(3);
    const Mat a = testutil::random_mat(rng, 4, 3);
    const Mat b = testutil::random_mat(rng, 4, 2);
    Mat ab(4, 5);
    ab << a, b;
    CHECK((hconcat(dense_operator(a), dense_operator(b)).materialize() - ab).norm() < 1e-14);
}

TEST_CASE("dimension mismatches are data errors") {
    CHECK_THROWS_AS(compose(identity_operator(3), identity_operator(4)), DataError);
    CHECK_THROWS_AS(vstack(identity_operator(3), identity_operator(4)), DataError);
    CHECK_THROWS_AS(identity_operator(3).apply(Vec::Zero(4)), DataError);
}

TEST_CASE("circular convolution follows (Kx)_i = sum_k kernel[k] x_{i-k+center}") {
    // kernel (a, b, c) centred at b: (Kx)_i = a x_{i+1} + b x_i + c x_{i-1}.
    const Mat k = circular_convolution(5, Vec::LinSpaced(3, 1.0, 3.0), 1).materialize();
    Mat expected = Mat::Zero(5, 5);
    for (int i = 0; i < 5; ++i) {
        expected(i, (i + 1) % 5) += 1.0;
        expected(i, i) += 2.0;
        expected(i, (i + 4) % 5) += 3.0;
    }
    CHECK((k - expected).norm() < 1e-15);
}

TEST_CASE("gaussian blur preserves constants and is symmetric") {
    const Mat b = circular_gaussian_blur(32, 1.5).materialize();
    CHECK((b * Vec::Ones(32) - Vec::Ones(32)).cwiseAbs().maxCoeff() < 1e-14);
    CHECK((b - b.transpose()).norm() < 1e-14);
    CHECK_THROWS_AS(circular_gaussian_blur(32, 0.0), UsageError);
}

TEST_CASE("gaussian matrices are reproducible per seed") {
    CHECK(gaussian_random_matrix(4, 6, 9) == gaussian_random_matrix(4, 6, 9));
    CHECK(gaussian_random_matrix(4, 6, 9) != gaussian_random_matrix(4, 6, 10));
}

TEST_CASE("operator norms match their closed forms") {
    Mat m(2, 3);
    m << 1, -2, 3, -4, 5, 0.5;
    CHECK(op_norm(m, Norm::Linf, Norm::Linf) == doctest::Approx(9.5));
    CHECK(op_norm(m, Norm::L2, Norm::Linf) == doctest::Approx(std::sqrt(16.0 + 25.0 + 0.25)));
    // Largest singular value from the eigenvalues of m m*.
    const double s = std::sqrt(Eigen::SelfAdjointEigenSolver<Mat>(m * m.transpose()).eigenvalues().maxCoeff());
    CHECK(op_norm(m, Norm::L2, Norm::L2) == doctest::Approx(s).epsilon(1e-12));
    CHECK(spectral_norm(dense_operator(m)) == doctest::Approx(s).epsilon(1e-8));
    // Best vertex is (1, -1, 1) with m x = (6, -8.5).
    CHECK(op_norm(m, Norm::Linf, Norm::L2) == doctest::Approx(std::sqrt(36.0 + 72.25)));
    // A diagonal matrix attains its Frobenius norm at any vertex.
    const Mat diag = Vec::LinSpaced(10, 1.0, 10.0).asDiagonal();
    CHECK(op_norm(diag, Norm::Linf, Norm::L2) == doctest::Approx(diag.norm()));
    CHECK_THROWS_AS(op_norm(Mat::Ones(2, 25), Norm::Linf, Norm::L2), UsageError);
}

TEST_CASE("(inf, 2) norm dominates random points of the cube") {
    std::mt19937_64 rng(6);
    const Mat m = testutil::random_mat(rng, 7, 9);
    const double norm = op_norm(m, Norm::Linf, Norm::L2);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    double sampled = 0.0;
    for (int k = 0; k < 20000; ++k) {
        Vec x(9);
        for (auto& v : x) v = u(rng);
        sampled = std::max(sampled, (m * x).norm());
        for (auto& v : x) v = v < 0 ? -1.0 : 1.0;
        sampled = std::max(sampled, (m * x).norm());
    }
    CHECK(sampled <= norm * (1.0 + 1e-12));
    // 20000 random vertices of a 512-vertex cube reach the maximum.
    CHECK(sampled == doctest::Approx(norm).epsilon(1e-12));
}

TEST_CASE("pseudoinverse satisfies the Penrose equations, also when rank deficient") {
    std::mt19937_64 rng(5);
    const Mat m = testutil::random_mat(rng, 6, 3) * testutil::random_mat(rng, 3, 5);  // rank 3
    const Mat p = pseudoinverse(m);
    CHECK(numerical_rank(m) == 3);
    CHECK((m * p * m - m).norm() < 1e-10);
    CHECK((p * m * p - p).norm() < 1e-10);
    CHECK(((m * p).transpose() - m * p).norm() < 1e-10);
    CHECK(((p * m).transpose() - p * m).norm() < 1e-10);
}

TEST_CASE("pseudoinverse of a structured difference matrix") {
    // Forward differences on 32 samples with five atoms removed: many equal
    // singular values, which a divide-and-conquer SVD got wrong here.
    const std::vector<int> removed{9, 13, 16, 18, 25};
    Mat d = Mat::Zero(32, 26);
    int c = 0;
    for (int i = 0; i < 31; ++i) {
        if (std::find(removed.begin(), removed.end(), i) != removed.end()) continue;
        d(i, c) = -1.0;
        d(i + 1, c) = 1.0;
        ++c;
    }
    const Mat p = pseudoinverse(d);
    CHECK((d * p * d - d).norm() < 1e-10);
    CHECK((p * d - Mat::Identity(26, 26)).norm() < 1e-10);
}

TEST_CASE("nullspace basis is orthonormal, annihilated and of the right dimension") {
    std::mt19937_64 rng(6);
    const Mat m = testutil::random_mat(rng, 3, 2) * testutil::random_mat(rng, 2, 7);
    const Mat k = nullspace_basis(m);
    CHECK(k.cols() == 5);
    CHECK((k.transpose() * k - Mat::Identity(5, 5)).norm() < 1e-12);
    CHECK((m * k).norm() < 1e-10);
    CHECK(nullspace_basis(Mat(0, 4)).cols() == 4);
}

TEST_CASE("CSV output uses 17 significant digits and reads back exactly") {
    std::mt19937_64 rng(8);
    const Mat m = testutil::random_mat(rng, 3, 4);
    std::stringstream ss;
    write_csv(ss, m);
    CHECK(read_csv_matrix(ss) == m);

    std::stringstream one;
    write_csv(one, Mat::Constant(1, 1, 0.1));
    CHECK(one.str() == "0.10000000000000001\n");

    const Vec v = testutil::random_vec(rng, 9);
    std::stringstream sv;
    write_signal_csv(sv, v);
    CHECK(read_signal_csv(sv) == v);
}

TEST_CASE("CSV reader skips comment lines and rejects ragged rows") {
    std::stringstream ok("# header\n1,2\n3,4\n");
    CHECK(read_csv_matrix(ok).rows() == 2);
    std::stringstream bad("1,2\n3\n");
    CHECK_THROWS_AS(read_csv_matrix(bad), DataError);
    CHECK_THROWS_AS(read_signal_file("/nonexistent/signal.csv"), DataError);
}

TEST_CASE("shortest_repr round-trips") {
    for (double v : {0.1, 1.0 / 3.0, 1e-300, -2.5, 123456789.0}) CHECK(std::stod(shortest_repr(v)) == v);
    CHECK(shortest_repr(0.5) == "0.5");
}

}
