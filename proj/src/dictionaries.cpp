#include "cosparse/dictionaries.hpp"

#include <cmath>
#include <map>
#include <sstream>

namespace cosparse {

Dictionary::Dictionary(DictionaryKind kind, Mat atoms, std::string label)
    : kind_(kind), atoms_(std::make_shared<const Mat>(std::move(atoms))), label_(std::move(label)) {}

Vec Dictionary::analysis(const Vec& x) const {
    if (x.size() != n()) {
        throw DataError("dictionary analysis: signal length " + std::to_string(x.size()) +
                        " does not match n = " + std::to_string(n()));
    }
    return atoms_->transpose() * x;
}

Vec Dictionary::synthesis(const Vec& a) const {
    if (a.size() != p()) {
        throw DataError("dictionary synthesis: coefficient length mismatch");
    }
    return (*atoms_) * a;
}

LinearOperator Dictionary::as_operator() const { return dense_operator(*atoms_, label_); }

Mat Dictionary::columns(const std::vector<int>& idx) const {
    Mat out(n(), static_cast<Eigen::Index>(idx.size()));
    for (std::size_t k = 0; k < idx.size(); ++k) out.col(static_cast<Eigen::Index>(k)) = atoms_->col(idx[k]);
    return out;
}

Dictionary make_tv(Eigen::Index n) {
    if (n < 2) throw UsageError("tv dictionary needs n >= 2");
    Mat d = Mat::Zero(n, n - 1);
    for (Eigen::Index j = 0; j + 1 < n; ++j) {
        d(j, j) = -1.0;
        d(j + 1, j) = 1.0;
    }
    return Dictionary(DictionaryKind::TvDiff, std::move(d), "tv");
}

Dictionary make_haar(Eigen::Index n, int j_max, double tau) {
    if (j_max < 0) throw UsageError("haar dictionary: jmax must be nonnegative");
    if (j_max > 30 || (Eigen::Index{2} << j_max) > n) {
        throw UsageError("haar dictionary: scale too large, need 2^(jmax+1) <= n");
    }
    if (!std::isfinite(tau)) throw UsageError("haar dictionary: tau must be finite");
    const Eigen::Index scales = j_max + 1;
    Mat d = Mat::Zero(n, n * scales);
    for (int j = 0; j < scales; ++j) {
        const Eigen::Index width = Eigen::Index{1} << j;
        const double c = std::pow(2.0, -tau * (j + 1));
        for (Eigen::Index i = 0; i < n; ++i) {
            const Eigen::Index col = j * n + i;
            for (Eigen::Index k = 0; k < width; ++k) {
                d((i + k) % n, col) += c;
                d(((i - k - 1) % n + n) % n, col) -= c;
            }
        }
    }
    return Dictionary(DictionaryKind::HaarShiftInvariant, std::move(d),
                      "haar:jmax=" + std::to_string(j_max) + ",tau=" + shortest_repr(tau));
}

Dictionary make_fused(Eigen::Index n, double epsilon) {
    if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
        throw UsageError("fused dictionary: eps must be positive");
    }
    if (n < 2) throw UsageError("fused dictionary needs n >= 2");
    Mat d(n, 2 * n - 1);
    d << make_tv(n).matrix(), epsilon * Mat::Identity(n, n);
    return Dictionary(DictionaryKind::Fused, std::move(d), "fused:eps=" + shortest_repr(epsilon));
}

Dictionary make_identity(Eigen::Index n) {
    if (n < 1) throw UsageError("identity dictionary needs n >= 1");
    return Dictionary(DictionaryKind::Identity, Mat::Identity(n, n), "id");
}

namespace {

std::map<std::string, std::string> parse_params(const std::string& body, const std::string& spec) {
    std::map<std::string, std::string> out;
    std::stringstream ss(body);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto eq = item.find('=');
        if (eq == std::string::npos || eq == 0) {
            throw UsageError("malformed parameter '" + item + "' in '" + spec + "'");
        }
        out[item.substr(0, eq)] = item.substr(eq + 1);
    }
    return out;
}

double to_double(const std::string& s, const std::string& spec) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw UsageError("not a number '" + s + "' in '" + spec + "'");
    }
}

}  // namespace

namespace {

struct DictionarySpec {
    std::string name;
    int jmax = 4;
    double tau = 0.5;
    double eps = 0.1;
};

DictionarySpec parse_spec(const std::string& spec) {
    const auto colon = spec.find(':');
    DictionarySpec out;
    out.name = spec.substr(0, colon);
    const auto params =
        colon == std::string::npos ? std::map<std::string, std::string>{}
                                   : parse_params(spec.substr(colon + 1), spec);
    auto allow_only = [&](std::initializer_list<const char*> keys) {
        for (const auto& [k, v] : params) {
            bool known = false;
            for (const char* key : keys) known = known || k == key;
            if (!known) throw UsageError("unknown parameter '" + k + "' in dictionary '" + spec + "'");
        }
    };
    if (out.name == "tv" || out.name == "id") {
        allow_only({});
    } else if (out.name == "haar") {
        allow_only({"jmax", "tau"});
        const double jmax_value = params.count("jmax") ? to_double(params.at("jmax"), spec) : 4.0;
        if (jmax_value != std::floor(jmax_value) || jmax_value < 0.0 || jmax_value > 30.0) {
            throw UsageError("jmax must be a small nonnegative integer in '" + spec + "'");
        }
        out.jmax = static_cast<int>(jmax_value);
        if (params.count("tau")) out.tau = to_double(params.at("tau"), spec);
    } else if (out.name == "fused") {
        allow_only({"eps"});
        if (params.count("eps")) out.eps = to_double(params.at("eps"), spec);
        if (!(out.eps > 0.0)) throw UsageError("fused dictionary: eps must be positive in '" + spec + "'");
    } else {
        throw UsageError("unknown dictionary '" + spec + "' (expected tv, id, haar:jmax=J,tau=T or fused:eps=E)");
    }
    return out;
}

}  // namespace

std::string canonical_dictionary_spec(const std::string& spec) {
    const DictionarySpec d = parse_spec(spec);
    if (d.name == "haar") return "haar:jmax=" + std::to_string(d.jmax) + ",tau=" + shortest_repr(d.tau);
    if (d.name == "fused") return "fused:eps=" + shortest_repr(d.eps);
    return d.name;
}

Dictionary parse_dictionary(const std::string& spec, Eigen::Index n) {
    const DictionarySpec d = parse_spec(spec);
    if (d.name == "tv") return make_tv(n);
    if (d.name == "id") return make_identity(n);
    if (d.name == "haar") return make_haar(n, d.jmax, d.tau);
    return make_fused(n, d.eps);
}

}  // namespace cosparse
