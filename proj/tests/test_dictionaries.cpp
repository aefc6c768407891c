#include "doctest.h"
#include "helpers.hpp"

#include "cosparse/dictionaries.hpp"

using namespace cosparse;

TEST_SUITE("dictionaries") {

TEST_CASE("TV atoms are forward differences") {
    const Dictionary tv = make_tv(4);
    CHECK(tv.n() == 4);
    CHECK(tv.p() == 3);
    Vec x(4);
    x << 1.0, 4.0, 9.0, 16.0;
    Vec expected(3);
    expected << 3.0, 5.0, 7.0;
    CHECK(tv.analysis(x) == expected);
    CHECK(tv.analysis(Vec::Ones(4)).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("Haar at scale 0 with tau = 1 is half the backward difference") {
    const int n = 8;
    const Dictionary h = make_haar(n, 2, 1.0);
    CHECK(h.p() == 3 * n);
    std::mt19937_64 rng(2);
    const Vec x = testutil::random_vec(rng, n);
    const Vec a = h.analysis(x);
    for (int i = 0; i < n; ++i) CHECK(a[i] == doctest::Approx(0.5 * (x[i] - x[(i + n - 1) % n])));
}

TEST_CASE("Haar atoms at scale j have 2^{j+1} nonzeros of magnitude 2^{-tau(j+1)}") {
    const int n = 16;
    const double tau = 0.5;
    const Dictionary h = make_haar(n, 2, tau);
    for (int j = 0; j <= 2; ++j) {
        const Vec atom = h.matrix().col(j * n + 5);
        const double c = std::pow(2.0, -tau * (j + 1));
        int nonzeros = 0;
        for (int i = 0; i < n; ++i) {
            if (atom[i] != 0.0) {
                ++nonzeros;
                CHECK(std::abs(atom[i]) == doctest::Approx(c));
            }
        }
        CHECK(nonzeros == (2 << j));
        CHECK(atom.sum() == doctest::Approx(0.0));
    }
    CHECK_THROWS_AS(make_haar(16, 4, 0.5), UsageError);
}

TEST_CASE("fused dictionary is [D_tv, eps Id]") {
    const Dictionary f = make_fused(5, 0.25);
    CHECK(f.p() == 4 + 5);
    CHECK(f.matrix().leftCols(4) == make_tv(5).matrix());
    CHECK(f.matrix().rightCols(5) == 0.25 * Mat::Identity(5, 5));
    CHECK_THROWS_AS(make_fused(5, 0.0), UsageError);
}

TEST_CASE("synthesis is the adjoint of analysis") {
    std::mt19937_64 rng(4);
    for (const auto& d : {make_tv(9), make_fused(9, 0.3), make_identity(9)}) {
        const Vec x = testutil::random_vec(rng, d.n());
        const Vec a = testutil::random_vec(rng, d.p());
        CHECK(d.analysis(x).dot(a) == doctest::Approx(x.dot(d.synthesis(a))));
    }
}

TEST_CASE("dictionary spec parsing") {
    CHECK(parse_dictionary("tv", 10).kind() == DictionaryKind::TvDiff);
    CHECK(parse_dictionary("id", 10).p() == 10);
    CHECK(parse_dictionary("haar", 32).label() == "haar:jmax=4,tau=0.5");
    CHECK(parse_dictionary("haar:jmax=2,tau=1", 32).p() == 3 * 32);
    CHECK(parse_dictionary("fused", 10).label() == "fused:eps=0.1");
    CHECK(parse_dictionary("fused:eps=0.3", 10).matrix()(0, 9) == doctest::Approx(0.3));
    CHECK(canonical_dictionary_spec("haar:tau=1") == "haar:jmax=4,tau=1");
    CHECK(canonical_dictionary_spec("fused:eps=0.25") == "fused:eps=0.25");
    CHECK_THROWS_AS(parse_dictionary("wavelet", 10), UsageError);
    CHECK_THROWS_AS(parse_dictionary("haar:levels=3", 32), UsageError);
    CHECK_THROWS_AS(parse_dictionary("haar:jmax=2.5", 32), UsageError);
    CHECK_THROWS_AS(parse_dictionary("fused:eps=abc", 10), UsageError);
    CHECK_THROWS_AS(parse_dictionary("fused:eps", 10), UsageError);
    CHECK_THROWS_AS(make_tv(4).analysis(Vec::Zero(5)), DataError);
}

}
