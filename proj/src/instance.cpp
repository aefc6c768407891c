#include "cosparse/instance.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <random>
#include <sstream>

#include "json.hpp"

#include "cosparse/experiments.hpp"

namespace cosparse {

namespace {

using Params = std::map<std::string, std::string>;

// Splits "name:k=v,k=v" into the name and its parameters.
std::pair<std::string, Params> split_spec(const std::string& text, const std::string& what) {
    const auto colon = text.find(':');
    const std::string name = text.substr(0, colon);
    Params params;
    if (colon == std::string::npos) return {name, params};
    std::stringstream ss(text.substr(colon + 1));
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto eq = item.find('=');
        if (eq == std::string::npos || eq == 0) {
            throw UsageError("malformed " + what + " parameter '" + item + "' in '" + text + "' (expected key=value)");
        }
        if (!params.emplace(item.substr(0, eq), item.substr(eq + 1)).second) {
            throw UsageError("duplicate " + what + " parameter '" + item.substr(0, eq) + "' in '" + text + "'");
        }
    }
    return {name, params};
}

void allow_only(const Params& params, std::initializer_list<const char*> keys, const std::string& text) {
    for (const auto& [k, v] : params) {
        bool known = false;
        for (const char* key : keys) known = known || k == key;
        if (!known) throw UsageError("unknown parameter '" + k + "' in '" + text + "'");
    }
}

double number(const Params& p, const std::string& key, double fallback, const std::string& text) {
    const auto it = p.find(key);
    if (it == p.end()) return fallback;
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(it->second, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != it->second.size() || !std::isfinite(v)) {
        throw UsageError("'" + it->second + "' is not a number (" + key + " in '" + text + "')");
    }
    return v;
}

long long integer(const Params& p, const std::string& key, long long fallback, const std::string& text) {
    const double v = number(p, key, static_cast<double>(fallback), text);
    if (v != std::floor(v) || std::abs(v) > 9.0e15) {
        throw UsageError(key + " must be an integer in '" + text + "'");
    }
    return static_cast<long long>(v);
}

std::uint64_t seed_of(const Params& p, const std::string& text) {
    const long long s = integer(p, "seed", 1, text);
    if (s < 0) throw UsageError("seed must be nonnegative in '" + text + "'");
    return static_cast<std::uint64_t>(s);
}

}  // namespace

// ---- Phi ---------------------------------------------------------------------

PhiSpec parse_phi(const std::string& text) {
    const auto [name, p] = split_spec(text, "phi");
    PhiSpec s;
    if (name == "id") {
        allow_only(p, {}, text);
        s.kind = PhiSpec::Kind::Identity;
    } else if (name == "blur") {
        allow_only(p, {"sigma"}, text);
        s.kind = PhiSpec::Kind::Blur;
        s.sigma = number(p, "sigma", 1.0, text);
        if (!(s.sigma > 0.0)) throw UsageError("blur sigma must be positive in '" + text + "'");
    } else if (name == "gauss") {
        allow_only(p, {"q", "seed"}, text);
        if (!p.count("q")) throw UsageError("gauss needs the number of measurements, e.g. gauss:q=16,seed=1");
        s.kind = PhiSpec::Kind::Gauss;
        const long long q = integer(p, "q", 0, text);
        if (q < 1 || q > 1000000) throw UsageError("gauss q must be a positive integer in '" + text + "'");
        s.q = static_cast<int>(q);
        s.seed = seed_of(p, text);
    } else {
        throw UsageError("unknown phi '" + text + "' (expected id, blur:sigma=S or gauss:q=Q,seed=K)");
    }
    return s;
}

std::string PhiSpec::canonical() const {
    switch (kind) {
        case Kind::Identity: return "id";
        case Kind::Blur: return "blur:sigma=" + shortest_repr(sigma);
        case Kind::Gauss: return "gauss:q=" + std::to_string(q) + ",seed=" + std::to_string(seed);
    }
    return "";
}

Mat PhiSpec::build(int n) const {
    switch (kind) {
        case Kind::Identity: return Mat::Identity(n, n);
        case Kind::Blur: return circular_gaussian_blur(n, sigma).materialize();
        case Kind::Gauss: return gaussian_random_matrix(q, n, seed);
    }
    return {};
}

// ---- signals -----------------------------------------------------------------

SignalSpec parse_signal(const std::string& text) {
    if (text.empty()) throw UsageError("empty signal spec");
    SignalSpec s;
    if (text.rfind("file:", 0) == 0 || text.find(':') == std::string::npos) {
        if (text != "boxcar" && text != "staircase" && text != "two-boxcar") {
            s.kind = SignalSpec::Kind::File;
            s.path = text.rfind("file:", 0) == 0 ? text.substr(5) : text;
            if (s.path.empty()) throw UsageError("file: needs a path");
            s.n = 0;
            return s;
        }
    }
    const auto [name, p] = split_spec(text, "signal");
    auto read_n = [&](long long fallback) {
        const long long n = integer(p, "n", fallback, text);
        if (n < 2 || n > 100000) throw UsageError("signal length n out of range in '" + text + "'");
        return static_cast<int>(n);
    };
    if (name == "boxcar") {
        allow_only(p, {"n", "eta"}, text);
        s.kind = SignalSpec::Kind::Boxcar;
        s.n = read_n(32);
        s.eta = number(p, "eta", 0.2, text);
        haar_boxcar_block(s.n, s.eta);
    } else if (name == "staircase") {
        allow_only(p, {"n"}, text);
        s.kind = SignalSpec::Kind::Staircase;
        s.n = read_n(32);
        staircase_signal(s.n);
    } else if (name == "two-boxcar") {
        allow_only(p, {"n", "eta", "rho"}, text);
        s.kind = SignalSpec::Kind::TwoBoxcar;
        s.n = read_n(32);
        s.eta = number(p, "eta", 0.1, text);
        s.rho = number(p, "rho", 0.1, text);
        fused_boxcar_blocks(s.n, s.eta, s.rho);
    } else {
        throw UsageError("unknown signal generator '" + name +
                         "' (expected boxcar, staircase, two-boxcar, file:PATH or a path)");
    }
    return s;
}

std::string SignalSpec::canonical() const {
    switch (kind) {
        case Kind::Boxcar: return "boxcar:n=" + std::to_string(n) + ",eta=" + shortest_repr(eta);
        case Kind::Staircase: return "staircase:n=" + std::to_string(n);
        case Kind::TwoBoxcar:
            return "two-boxcar:n=" + std::to_string(n) + ",eta=" + shortest_repr(eta) + ",rho=" + shortest_repr(rho);
        case Kind::File: return "file:" + path;
    }
    return "";
}

Vec SignalSpec::build() const {
    switch (kind) {
        case Kind::Boxcar: {
            const Block b = haar_boxcar_block(n, eta);
            Vec x = Vec::Zero(n);
            x.segment(b.first, b.last - b.first).setConstant(1.0);
            return x;
        }
        case Kind::Staircase: return staircase_signal(n);
        case Kind::TwoBoxcar: return fused_signal(n, eta, rho);
        case Kind::File: return read_signal_file(path);
    }
    return {};
}

// ---- noise -------------------------------------------------------------------

NoiseSpec parse_noise(const std::string& text) {
    NoiseSpec s;
    if (text.rfind("file:", 0) == 0) {
        s.kind = NoiseSpec::Kind::File;
        s.path = text.substr(5);
        if (s.path.empty()) throw UsageError("file: needs a path");
        return s;
    }
    const auto [name, p] = split_spec(text, "noise");
    if (name == "none") {
        allow_only(p, {}, text);
    } else if (name == "gaussian") {
        allow_only(p, {"sigma", "seed"}, text);
        s.kind = NoiseSpec::Kind::Gaussian;
        s.sigma = number(p, "sigma", 0.01, text);
        if (!(s.sigma >= 0.0)) throw UsageError("noise sigma must be nonnegative in '" + text + "'");
        s.seed = seed_of(p, text);
    } else {
        throw UsageError("unknown noise '" + text + "' (expected none, gaussian:sigma=S,seed=K or file:PATH)");
    }
    return s;
}

std::string NoiseSpec::canonical() const {
    switch (kind) {
        case Kind::None: return "none";
        case Kind::Gaussian: return "gaussian:sigma=" + shortest_repr(sigma) + ",seed=" + std::to_string(seed);
        case Kind::File: return "file:" + path;
    }
    return "";
}

Vec NoiseSpec::build(int q) const {
    switch (kind) {
        case Kind::None: return Vec::Zero(q);
        case Kind::Gaussian: {
            std::mt19937_64 rng(seed);
            std::normal_distribution<double> normal(0.0, 1.0);
            Vec w(q);
            for (int i = 0; i < q; ++i) w[i] = sigma * normal(rng);
            return w;
        }
        case Kind::File: {
            Vec w = read_signal_file(path);
            if (w.size() != q) {
                throw DataError("noise file " + path + " has " + std::to_string(w.size()) + " values, expected " +
                                std::to_string(q));
            }
            return w;
        }
    }
    return {};
}

// ---- lambda ------------------------------------------------------------------

LambdaSpec parse_lambda(const std::string& text) {
    LambdaSpec s;
    if (text == "auto-small") {
        s.kind = LambdaSpec::Kind::AutoSmall;
        return s;
    }
    if (text.rfind("auto-noise", 0) == 0) {
        s.kind = LambdaSpec::Kind::AutoNoise;
        const std::string rest = text.substr(10);
        if (rest.empty()) return s;
        if (rest.size() < 3 || rest.front() != '(' || rest.back() != ')') {
            throw UsageError("malformed lambda '" + text + "' (expected auto-noise(RHO))");
        }
        s.rho = number({{"rho", rest.substr(1, rest.size() - 2)}}, "rho", 1.5, text);
        if (!(s.rho > 1.0)) throw UsageError("auto-noise needs rho > 1, got '" + text + "'");
        return s;
    }
    s.value = number({{"lambda", text}}, "lambda", 0.0, text);
    if (s.value < 0.0) throw UsageError("lambda must be nonnegative, got " + text);
    return s;
}

std::string LambdaSpec::canonical() const {
    switch (kind) {
        case Kind::Value: return shortest_repr(value);
        case Kind::AutoSmall: return "auto-small";
        case Kind::AutoNoise: return "auto-noise(" + shortest_repr(rho) + ")";
    }
    return "";
}

// ---- instance ----------------------------------------------------------------

std::string InstanceSpec::to_json() const {
    nlohmann::ordered_json j;
    j["phi"] = phi.canonical();
    j["dict"] = dict;
    j["signal"] = signal ? nlohmann::ordered_json(signal->canonical()) : nlohmann::ordered_json(nullptr);
    j["y"] = y_file ? nlohmann::ordered_json(*y_file) : nlohmann::ordered_json(nullptr);
    j["noise"] = noise.canonical();
    j["lambda"] = lambda.canonical();
    return j.dump(2);
}

InstanceSpec instance_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw DataError(std::string("instance JSON does not parse: ") + e.what());
    }
    if (!j.is_object()) throw DataError("instance JSON must be an object");
    auto text_of = [&j](const char* key) -> std::optional<std::string> {
        if (!j.contains(key) || j[key].is_null()) return std::nullopt;
        if (!j[key].is_string()) throw DataError(std::string("instance JSON: '") + key + "' must be a string");
        return j[key].get<std::string>();
    };
    for (const auto& [k, v] : j.items()) {
        if (k != "phi" && k != "dict" && k != "signal" && k != "y" && k != "noise" && k != "lambda") {
            throw DataError("instance JSON: unknown key '" + k + "'");
        }
    }
    InstanceSpec s;
    if (auto v = text_of("phi")) s.phi = parse_phi(*v);
    if (auto v = text_of("dict")) s.dict = canonical_dictionary_spec(*v);
    if (auto v = text_of("signal")) s.signal = parse_signal(*v);
    s.y_file = text_of("y");
    if (auto v = text_of("noise")) s.noise = parse_noise(*v);
    if (auto v = text_of("lambda")) s.lambda = parse_lambda(*v);
    return s;
}

Instance build_instance(const InstanceSpec& spec, const ArcParams& arc) {
    if (!spec.signal && !spec.y_file) throw UsageError("an instance needs --signal or --y");
    Instance inst;
    inst.spec = spec;
    std::optional<Vec> observed;
    if (spec.y_file) observed = read_signal_file(*spec.y_file);
    if (spec.signal) {
        inst.x0 = spec.signal->build();
        inst.n = static_cast<int>(inst.x0->size());
    } else if (spec.phi.kind == PhiSpec::Kind::Gauss) {
        throw UsageError("with a gauss phi the signal length is unknown; pass --signal as well as --y");
    } else {
        inst.n = static_cast<int>(observed->size());
    }
    inst.phi = spec.phi.build(inst.n);
    inst.dict = parse_dictionary(spec.dict, inst.n);
    const int q = static_cast<int>(inst.phi.rows());
    inst.w = spec.noise.build(q);
    if (observed) {
        if (observed->size() != q) {
            throw DataError("observation has " + std::to_string(observed->size()) + " values, phi has " +
                            std::to_string(q) + " rows");
        }
        inst.y = *observed;
    } else {
        inst.y = inst.phi * *inst.x0 + inst.w;
    }

    switch (spec.lambda.kind) {
        case LambdaSpec::Kind::Value:
            inst.lambda = spec.lambda.value;
            break;
        case LambdaSpec::Kind::AutoSmall: {
            if (!inst.x0) throw UsageError("lambda auto-small needs the true signal (--signal)");
            const auto dec = build_decomposition_for(inst.dict, inst.phi, *inst.x0);
            const auto win = small_noise_window(dec, *inst.x0, inst.w.norm());
            if (!win.nonempty()) {
                throw PreconditionError("lambda auto-small: the small-noise window (" + std::to_string(win.lower) +
                                        ", " + std::to_string(win.upper) + ") is empty, the noise is too large");
            }
            inst.lambda = win.midpoint();
            break;
        }
        case LambdaSpec::Kind::AutoNoise: {
            if (!inst.x0) throw UsageError("lambda auto-noise needs the true signal (--signal)");
            const double wn = inst.w.norm();
            if (!(wn > 0.0)) throw UsageError("lambda auto-noise needs nonzero noise (see --noise)");
            const auto dec = build_decomposition_for(inst.dict, inst.phi, *inst.x0);
            const double a = compute_arc(dec, arc).value;
            if (!(a < 1.0)) {
                throw PreconditionError("lambda auto-noise: ARC ≥ 1 (ARC = " + std::to_string(a) +
                                        "), the bounded-noise theorem does not apply");
            }
            inst.lambda = spec.lambda.rho * wn * theorem_constants(dec, a).c_noise / (1.0 - a);
            break;
        }
    }
    return inst;
}

}  // namespace cosparse
