#include "cosparse/criteria.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace cosparse {

Vec project_l1_ball(const Vec& x, double radius) {
    if (!(radius > 0.0)) throw UsageError("project_l1_ball: radius must be positive");
    if (x.lpNorm<1>() <= radius) return x;
    std::vector<double> mags(x.data(), x.data() + x.size());
    for (double& m : mags) m = std::abs(m);
    std::sort(mags.begin(), mags.end(), std::greater<>());
    // Largest k with mags[k-1] > (sum_{i<k} mags[i] - radius) / k fixes the threshold.
    double cumulative = 0.0;
    double threshold = 0.0;
    for (std::size_t k = 0; k < mags.size(); ++k) {
        cumulative += mags[k];
        const double t = (cumulative - radius) / static_cast<double>(k + 1);
        if (mags[k] > t) threshold = t;
    }
    Vec out(x.size());
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        const double m = std::max(std::abs(x[i]) - threshold, 0.0);
        out[i] = x[i] < 0.0 ? -m : m;
    }
    return out;
}

Vec prox_linf(const Vec& x, double gamma) {
    if (!(gamma > 0.0)) throw UsageError("prox_linf: gamma must be positive");
    return x - gamma * project_l1_ball(x / gamma, 1.0);
}

CriterionResult min_linf_over_subspace(const Vec& c, const Mat& kernel, const DrParams& params) {
    CriterionResult res;
    res.minimizer_u = Vec::Zero(c.size());
    res.value = c.size() ? c.cwiseAbs().maxCoeff() : 0.0;
    if (kernel.cols() == 0 || c.size() == 0) return res;

    const double gamma = params.gamma;
    const double mu = params.relaxation;
    auto project = [&kernel](const Vec& v) -> Vec { return kernel * (kernel.transpose() * v); };
    // prox of u -> ||c - u||_inf by the translation rule.
    auto prox_f2 = [&c, gamma](const Vec& v) -> Vec { return c - prox_linf(c - v, gamma); };

    Vec z = project(c);
    double previous = INFINITY;
    res.converged = false;
    int it = 0;
    for (; it < params.max_iters; ++it) {
        const Vec u = project(z);
        const double objective = (c - u).cwiseAbs().maxCoeff();
        if (objective < res.value) {
            res.value = objective;
            res.minimizer_u = u;
        }
        const Vec r = prox_f2(2.0 * u - z);
        const double gap = (r - u).cwiseAbs().maxCoeff();
        z += mu * (r - u);
        if (std::abs(objective - previous) <= params.objective_tol && gap <= params.residual_tol) {
            res.converged = true;
            ++it;
            break;
        }
        previous = objective;
    }
    res.iterations = it;
    return res;
}

CriterionResult ic_of_vector(const CosparseDecomposition& dec, const Vec& p_i, const DrParams& params) {
    if (p_i.size() != static_cast<Eigen::Index>(dec.support.size())) {
        throw DataError("IC: sign pattern length does not match the D-support size");
    }
    const Vec c = dec.omega * p_i;
    return min_linf_over_subspace(c, dec.kernel_d_j, params);
}

CriterionResult compute_ic(const CosparseDecomposition& dec, const SignVector& s, const DrParams& params) {
    if (s.size() != dec.p || s.support() != dec.support) {
        throw DataError("IC: sign vector support does not match the decomposition's D-support");
    }
    return ic_of_vector(dec, s.on_support(), params);
}

namespace {

Mat fuchs_matrix(const Mat& psi, const IndexSet& support) {
    const IndexSet cosupport = complement(support, psi.cols());
    Mat psi_i(psi.rows(), static_cast<Eigen::Index>(support.size()));
    Mat psi_j(psi.rows(), static_cast<Eigen::Index>(cosupport.size()));
    for (std::size_t k = 0; k < support.size(); ++k) psi_i.col(static_cast<Eigen::Index>(k)) = psi.col(support[k]);
    for (std::size_t k = 0; k < cosupport.size(); ++k) psi_j.col(static_cast<Eigen::Index>(k)) = psi.col(cosupport[k]);
    if (psi_i.cols() > 0 && numerical_rank(psi_i) < psi_i.cols()) {
        throw PreconditionError("Fuchs criterion: Psi_I is rank deficient");
    }
    return psi_j.transpose() * pseudoinverse(psi_i).transpose();
}

}  // namespace

double compute_ic_fuchs(const Mat& psi, const SignVector& s) {
    if (s.size() != psi.cols()) throw DataError("Fuchs criterion: sign vector length mismatch");
    const Mat omega = fuchs_matrix(psi, s.support());
    if (omega.size() == 0) return 0.0;
    return (omega * s.on_support()).cwiseAbs().maxCoeff();
}

double compute_erc(const Mat& psi, const IndexSet& support) {
    return op_norm(fuchs_matrix(psi, support), Norm::Linf, Norm::Linf);
}

int default_thread_count() {
    if (const char* env = std::getenv("COSPARSE_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0) return n;
    }
    return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

CriterionResult compute_arc(const CosparseDecomposition& dec, const ArcParams& params) {
    const auto k = static_cast<int>(dec.support.size());
    if (k > params.cap) {
        throw UsageError("ARC: D-support size " + std::to_string(k) + " exceeds the vertex cap " +
                         std::to_string(params.cap) + " (2^|I| inner solves)");
    }
    if (k == 0) return CriterionResult{0.0, Vec::Zero(static_cast<Eigen::Index>(dec.cosupport.size())), 0, true, Vec()};

    // p and -p give the same value, so the first coordinate is pinned to +1.
    const std::uint64_t count = std::uint64_t{1} << (k - 1);
    auto vertex = [k](std::uint64_t code) {
        Vec p(k);
        p[0] = 1.0;
        for (int b = 1; b < k; ++b) p[b] = (code >> (b - 1)) & 1u ? -1.0 : 1.0;
        return p;
    };

    const int workers = static_cast<int>(
        std::min<std::uint64_t>(count, static_cast<std::uint64_t>(params.threads > 0 ? params.threads
                                                                                     : default_thread_count())));
    struct Slot {
        bool have = false;
        std::uint64_t code = 0;
        CriterionResult result;
        int iterations = 0;
        bool converged = true;
    };
    std::vector<Slot> slots(static_cast<std::size_t>(workers));
    std::atomic<std::uint64_t> next{0};

    auto work = [&](int w) {
        Slot& slot = slots[static_cast<std::size_t>(w)];
        for (std::uint64_t code = next++; code < count; code = next++) {
            CriterionResult r = ic_of_vector(dec, vertex(code), params.dr);
            slot.iterations += r.iterations;
            slot.converged = slot.converged && r.converged;
            // Ties resolve to the smallest code so the result is schedule independent.
            if (!slot.have || r.value > slot.result.value ||
                (r.value == slot.result.value && code < slot.code)) {
                slot.result = std::move(r);
                slot.code = code;
                slot.have = true;
            }
        }
    };
    if (workers <= 1) {
        work(0);
    } else {
        std::vector<std::jthread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(work, w);
    }

    const Slot* winner = nullptr;
    int iterations = 0;
    bool converged = true;
    for (const Slot& slot : slots) {
        iterations += slot.iterations;
        converged = converged && slot.converged;
        if (!slot.have) continue;
        if (!winner || slot.result.value > winner->result.value ||
            (slot.result.value == winner->result.value && slot.code < winner->code)) {
            winner = &slot;
        }
    }
    CriterionResult out = winner->result;
    out.vertex = vertex(winner->code);
    out.iterations = iterations;
    out.converged = converged;
    return out;
}

double compute_warc(const CosparseDecomposition& dec) {
    return op_norm(dec.omega, Norm::Linf, Norm::Linf);
}

TvDual tv_dual_vector(const Vec& x) {
    const Eigen::Index n = x.size();
    if (n < 2) throw DataError("tv_dual_vector: signal too short");
    const Dictionary tv = make_tv(n);
    const SignVector s = d_support(x, tv);
    const IndexSet support = s.support();
    if (support.empty()) throw PreconditionError("tv_dual_vector: the signal has no jump");

    // Atom i sits at position i + 1 on the grid 0..n; positions 0 and n are zero anchors.
    std::vector<std::pair<Eigen::Index, double>> anchors;
    anchors.emplace_back(0, 0.0);
    for (int i : support) anchors.emplace_back(i + 1, static_cast<double>(s.entries[static_cast<std::size_t>(i)]));
    anchors.emplace_back(n, 0.0);

    TvDual out;
    out.m = Vec::Zero(n - 1);
    for (std::size_t a = 0; a + 1 < anchors.size(); ++a) {
        const auto [left, vl] = anchors[a];
        const auto [right, vr] = anchors[a + 1];
        for (Eigen::Index pos = std::max<Eigen::Index>(left, 1); pos <= std::min(right, n - 1); ++pos) {
            const double t = static_cast<double>(pos - left) / static_cast<double>(right - left);
            out.m[pos - 1] = (1.0 - t) * vl + t * vr;
        }
    }
    for (Eigen::Index i = 0; i + 1 < n; ++i)
        if (s.entries[static_cast<std::size_t>(i)] == 0) out.ic = std::max(out.ic, std::abs(out.m[i]));
    return out;
}

}  // namespace cosparse
