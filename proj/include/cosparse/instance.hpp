#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "cosparse/certify.hpp"

namespace cosparse {

/// `id`, `blur:sigma=S` or `gauss:q=Q,seed=K`.
struct PhiSpec {
    enum class Kind { Identity, Blur, Gauss };
    Kind kind = Kind::Identity;
    double sigma = 1.0;
    int q = 0;
    std::uint64_t seed = 1;

    std::string canonical() const;
    Mat build(int n) const;
    bool operator==(const PhiSpec&) const = default;
};
PhiSpec parse_phi(const std::string& text);

/// Named generator or a file:
///   boxcar:n=N,eta=E            1 on [floor(N/2 - E N), floor(N/2 + E N))
///   staircase:n=N               -1 on the first quarter, +1 on the last (N divisible by 4)
///   two-boxcar:n=N,eta=E,rho=R  the two unit boxcars of the compressed sensing study
///   file:PATH (or a bare path)  one value per line
struct SignalSpec {
    enum class Kind { Boxcar, Staircase, TwoBoxcar, File };
    Kind kind = Kind::Boxcar;
    int n = 32;
    double eta = 0.2;
    double rho = 0.1;
    std::string path;

    std::string canonical() const;
    Vec build() const;
    bool operator==(const SignalSpec&) const = default;
};
SignalSpec parse_signal(const std::string& text);

/// `none`, `gaussian:sigma=S,seed=K` or `file:PATH`.
struct NoiseSpec {
    enum class Kind { None, Gaussian, File };
    Kind kind = Kind::None;
    double sigma = 0.0;
    std::uint64_t seed = 1;
    std::string path;

    std::string canonical() const;
    Vec build(int q) const;
    bool operator==(const NoiseSpec&) const = default;
};
NoiseSpec parse_noise(const std::string& text);

/// A number, `auto-small` (midpoint of the small-noise window) or
/// `auto-noise(RHO)` (the bounded-noise theorem's choice).
struct LambdaSpec {
    enum class Kind { Value, AutoSmall, AutoNoise };
    Kind kind = Kind::Value;
    double value = 0.0;
    double rho = 1.5;

    std::string canonical() const;
    bool operator==(const LambdaSpec&) const = default;
};
LambdaSpec parse_lambda(const std::string& text);

struct InstanceSpec {
    PhiSpec phi;
    std::string dict = "tv";  // canonical, see canonical_dictionary_spec
    std::optional<SignalSpec> signal;
    /// Observation file; replaces Phi x0 + w when present.
    std::optional<std::string> y_file;
    NoiseSpec noise;
    LambdaSpec lambda;

    /// Canonical JSON with every default filled in.
    std::string to_json() const;
    bool operator==(const InstanceSpec&) const = default;
};

/// Parses the canonical JSON produced by to_json(); missing keys take defaults.
InstanceSpec instance_from_json(const std::string& text);

/// Everything a command needs, built from an InstanceSpec.
struct Instance {
    InstanceSpec spec;
    int n = 0;
    Mat phi;
    Dictionary dict = make_identity(1);
    std::optional<Vec> x0;
    Vec w;
    Vec y;
    double lambda = 0.0;
};

/// Builds the matrices and signals and resolves automatic lambda choices.
/// Throws PreconditionError when an automatic lambda's criterion is >= 1.
Instance build_instance(const InstanceSpec& spec, const ArcParams& arc = {});

}  // namespace cosparse
