#include <cstdio>
#include <fstream>

#include "doctest.h"
#include "helpers.hpp"

#include "cosparse/instance.hpp"

using namespace cosparse;

namespace {

double random_decimal(std::mt19937_64& rng, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

InstanceSpec random_spec(std::mt19937_64& rng) {
    InstanceSpec s;
    switch (testutil::uniform_int(rng, 0, 2)) {
        case 0: s.phi = parse_phi("id"); break;
        case 1: s.phi = parse_phi("blur:sigma=" + shortest_repr(random_decimal(rng, 0.1, 4.0))); break;
        default:
            s.phi = parse_phi("gauss:q=" + std::to_string(testutil::uniform_int(rng, 1, 64)) +
                              ",seed=" + std::to_string(testutil::uniform_int(rng, 0, 1000)));
    }
    const char* dicts[] = {"tv", "id", "haar", "haar:jmax=2,tau=1", "fused", "fused:eps=0.37"};
    s.dict = canonical_dictionary_spec(dicts[testutil::uniform_int(rng, 0, 5)]);
    const int n = 4 * testutil::uniform_int(rng, 2, 16);
    switch (testutil::uniform_int(rng, 0, 4)) {
        case 0: s.signal = parse_signal("boxcar:n=" + std::to_string(n) + ",eta=" + shortest_repr(random_decimal(rng, 0.05, 0.4))); break;
        case 1: s.signal = parse_signal("staircase:n=" + std::to_string(n)); break;
        case 2: s.signal = parse_signal("two-boxcar:n=" + std::to_string(n) + ",eta=0.1,rho=0.1"); break;
        case 3: s.signal = parse_signal("file:/tmp/x0 with spaces.csv"); break;
        default: break;
    }
    if (!s.signal || testutil::uniform_int(rng, 0, 3) == 0) s.y_file = "/tmp/y.csv";
    switch (testutil::uniform_int(rng, 0, 2)) {
        case 0: break;
        case 1: s.noise = parse_noise("gaussian:sigma=" + shortest_repr(random_decimal(rng, 0.0, 1.0)) + ",seed=9"); break;
        default: s.noise = parse_noise("file:/tmp/w.csv");
    }
    switch (testutil::uniform_int(rng, 0, 2)) {
        case 0: s.lambda = parse_lambda(shortest_repr(random_decimal(rng, 0.0, 3.0))); break;
        case 1: s.lambda = parse_lambda("auto-small"); break;
        default: s.lambda = parse_lambda("auto-noise(" + shortest_repr(random_decimal(rng, 1.01, 4.0)) + ")");
    }
    return s;
}

}  // namespace

TEST_SUITE("instance") {

TEST_CASE("spec parsing and canonical forms") {
    CHECK(parse_phi("blur:sigma=1.50").canonical() == "blur:sigma=1.5");
    CHECK(parse_phi("gauss:seed=3,q=8").canonical() == "gauss:q=8,seed=3");
    CHECK(parse_signal("boxcar").canonical() == "boxcar:n=32,eta=0.2");
    CHECK(parse_signal("data/x.csv").canonical() == "file:data/x.csv");
    CHECK(parse_noise("gaussian").canonical() == "gaussian:sigma=0.01,seed=1");
    CHECK(parse_lambda("auto-noise").canonical() == "auto-noise(1.5)");
    CHECK(parse_lambda("0.25").canonical() == "0.25");
}

TEST_CASE("malformed specs are usage errors") {
    CHECK_THROWS_AS(parse_phi("gauss"), UsageError);
    CHECK_THROWS_AS(parse_phi("blur:sigma=-1"), UsageError);
    CHECK_THROWS_AS(parse_phi("conv"), UsageError);
    CHECK_THROWS_AS(parse_signal("boxcar:n=8,width=2"), UsageError);
    CHECK_THROWS_AS(parse_signal("sine:n=8"), UsageError);
    CHECK_THROWS_AS(parse_noise("gaussian:sigma=x"), UsageError);
    CHECK_THROWS_AS(parse_lambda("auto-noise(0.5)"), UsageError);
    CHECK_THROWS_AS(parse_lambda("-1"), UsageError);
    CHECK_THROWS_AS(instance_from_json("{\"phi\": \"id\", \"extra\": 1}"), DataError);
    CHECK_THROWS_AS(instance_from_json("not json"), DataError);
}

TEST_CASE("JSON round trip on random specs") {
    std::mt19937_64 rng(61);
    for (int trial = 0; trial < 100; ++trial) {
        const InstanceSpec s = random_spec(rng);
        const std::string text = s.to_json();
        const InstanceSpec back = instance_from_json(text);
        CHECK(back == s);
        CHECK(back.to_json() == text);
    }
}

TEST_CASE("building: observation, noise and automatic lambdas") {
    InstanceSpec s;
    s.signal = parse_signal("boxcar:n=32,eta=0.2");
    s.noise = parse_noise("gaussian:sigma=0.001,seed=4");
    s.lambda = parse_lambda("auto-small");
    const Instance inst = build_instance(s);
    CHECK(inst.n == 32);
    CHECK((inst.y - *inst.x0 - inst.w).norm() < 1e-15);
    const auto dec = build_decomposition_for(inst.dict, inst.phi, *inst.x0);
    const auto win = small_noise_window(dec, *inst.x0, inst.w.norm());
    CHECK(inst.lambda == win.midpoint());

    // With D = Phi = Id the ARC is 0, so lambda = rho ||w|| c_J with c_J = 1.
    s.dict = "id";
    s.lambda = parse_lambda("auto-noise(2)");
    const Instance noisy = build_instance(s);
    CHECK(noisy.lambda == doctest::Approx(2.0 * noisy.w.norm()));

    // Two jumps of the same sign under TV reach ARC = 1.
    s.dict = "tv";
    s.signal = parse_signal("staircase:n=16");
    CHECK_THROWS_AS(build_instance(s), PreconditionError);
    s.noise = parse_noise("none");
    CHECK_THROWS_AS(build_instance(s), UsageError);
}

TEST_CASE("observation file with a mismatched length is a data error") {
    const std::string path = "/tmp/cosparse_test_y.csv";
    {
        std::ofstream f(path);
        f << "1\n2\n3\n";
    }
    InstanceSpec s;
    s.signal = parse_signal("boxcar:n=8,eta=0.2");
    s.y_file = path;
    CHECK_THROWS_AS(build_instance(s), DataError);
    s.signal.reset();
    CHECK(build_instance(s).n == 3);
    std::remove(path.c_str());
}

}
