// Command-line front end: solve, certify, ic, arc, warc, experiment, version.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "cosparse/experiments.hpp"
#include "cosparse/instance.hpp"

namespace {

using namespace cosparse;
using nlohmann::ordered_json;

constexpr const char* kVersion = "0.1.0";

struct InstanceFlags {
    std::string instance;
    std::string phi = "id";
    std::string dict = "tv";
    std::string signal;
    std::string y;
    std::string noise = "none";
    std::string lambda = "0";
    bool print_resolved = false;
};

void add_instance_flags(CLI::App* cmd, InstanceFlags& f) {
    cmd->add_option("--instance", f.instance, "Instance JSON (as printed by --print-resolved); flags override it");
    cmd->add_option("--phi", f.phi, "id | blur:sigma=S | gauss:q=Q,seed=K");
    cmd->add_option("--dict", f.dict, "tv | id | haar:jmax=J,tau=T | fused:eps=E");
    cmd->add_option("--signal", f.signal,
                    "boxcar:n=N,eta=E | staircase:n=N | two-boxcar:n=N,eta=E,rho=R | file:PATH");
    cmd->add_option("--y", f.y, "Observation file, one value per line (replaces Phi x0 + w)");
    cmd->add_option("--noise", f.noise, "none | gaussian:sigma=S,seed=K | file:PATH");
    cmd->add_option("--lambda", f.lambda, "L | auto-small | auto-noise(RHO)");
    cmd->add_flag("--print-resolved", f.print_resolved, "Print the resolved instance as JSON and exit");
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

InstanceSpec resolve_spec(const InstanceFlags& f, const CLI::App* cmd) {
    InstanceSpec spec;
    const bool from_file = !f.instance.empty();
    if (from_file) spec = instance_from_json(read_file(f.instance));
    auto given = [&](const char* flag) { return !from_file || cmd->count(flag) > 0; };
    if (given("--phi")) spec.phi = parse_phi(f.phi);
    if (given("--dict")) spec.dict = canonical_dictionary_spec(f.dict);
    if (cmd->count("--signal")) spec.signal = parse_signal(f.signal);
    if (cmd->count("--y")) spec.y_file = f.y;
    if (given("--noise")) spec.noise = parse_noise(f.noise);
    if (given("--lambda")) spec.lambda = parse_lambda(f.lambda);
    return spec;
}

void emit(const std::string& text, const std::string& out) {
    if (out.empty()) {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << '\n';
        return;
    }
    std::ofstream os(out);
    if (!os) throw DataError("cannot write " + out);
    os << text;
    if (!text.empty() && text.back() != '\n') os << '\n';
}

ordered_json one_based(const IndexSet& idx) {
    ordered_json a = ordered_json::array();
    for (int i : idx) a.push_back(i + 1);
    return a;
}

ordered_json vec_json(const Vec& v) {
    ordered_json a = ordered_json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
    return a;
}

Vec json_vec(const nlohmann::json& a, const char* what) {
    if (!a.is_array()) throw DataError(std::string("report: '") + what + "' must be an array of numbers");
    Vec v(static_cast<Eigen::Index>(a.size()));
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!a[i].is_number()) throw DataError(std::string("report: '") + what + "' must hold numbers");
        v[static_cast<Eigen::Index>(i)] = a[i].get<double>();
    }
    return v;
}

ordered_json criterion_json(const CriterionResult& r, const CosparseDecomposition& dec) {
    ordered_json j;
    j["value"] = r.value;
    j["converged"] = r.converged;
    j["iterations"] = r.iterations;
    j["support"] = one_based(dec.support);
    j["cosupport_dim"] = dec.cosupport.size();
    return j;
}

// ---- commands ------------------------------------------------------------------

struct SolveFlags {
    std::string method = "lasso";
    int max_iters = 100000;
    double tol = 1e-10;
};

int run_solve(const Instance& inst, const SolveFlags& f, const std::string& out) {
    SolveConfig cfg;
    cfg.lambda = inst.lambda;
    cfg.max_iters = f.max_iters;
    cfg.tol = f.tol;
    SolverReport rep;
    if (f.method == "lasso") {
        rep = solve_lasso(inst.phi, inst.dict, inst.y, cfg);
    } else if (f.method == "denoise") {
        if (inst.spec.phi.kind != PhiSpec::Kind::Identity) throw UsageError("--method denoise needs --phi id");
        rep = solve_denoise_dual(inst.dict, inst.y, cfg);
    } else {
        rep = solve_bp(inst.phi, inst.dict, inst.y, std::nullopt, cfg);
    }
    const double lambda_used = f.method == "bp" ? 1e-6 * (inst.phi.transpose() * inst.y).cwiseAbs().maxCoeff()
                                                 : inst.lambda;
    const SignVector s = d_support(rep.solution, inst.dict);
    ordered_json j;
    j["command"] = "solve";
    j["instance"] = ordered_json::parse(inst.spec.to_json());
    j["method"] = rep.method;
    j["lambda"] = lambda_used;
    j["objective"] = rep.objective;
    j["iterations"] = rep.iterations;
    j["converged"] = rep.converged;
    j["polished"] = rep.polished;
    j["support"] = one_based(s.support());
    j["cosupport_dim"] = s.cosupport().size();
    if (rep.constraint_residual) {
        j["constraint_residual"] = *rep.constraint_residual;
        j["feasible"] = *rep.feasible;
    }
    if (inst.x0) {
        j["error_l2"] = (rep.solution - *inst.x0).norm();
        j["sign_matches_x0"] = s == d_support(*inst.x0, inst.dict);
    }
    j["solution"] = vec_json(rep.solution);
    emit(j.dump(2), out);
    return 0;
}

int run_certify(const InstanceFlags& flags, const CLI::App* cmd, const std::string& report_path,
                const std::string& out) {
    nlohmann::json report;
    try {
        report = nlohmann::json::parse(read_file(report_path));
    } catch (const nlohmann::json::exception& e) {
        throw DataError("report " + report_path + " does not parse: " + e.what());
    }
    if (!report.is_object() || !report.contains("solution") || !report.contains("lambda")) {
        throw DataError("report " + report_path + " lacks 'solution' or 'lambda'; pass a solve report");
    }
    InstanceSpec spec;
    if (flags.instance.empty() && report.contains("instance")) {
        spec = instance_from_json(report["instance"].dump());
        // Explicit flags still win over the embedded instance.
        if (cmd->count("--phi")) spec.phi = parse_phi(flags.phi);
        if (cmd->count("--dict")) spec.dict = canonical_dictionary_spec(flags.dict);
        if (cmd->count("--signal")) spec.signal = parse_signal(flags.signal);
        if (cmd->count("--y")) spec.y_file = flags.y;
        if (cmd->count("--noise")) spec.noise = parse_noise(flags.noise);
    } else {
        spec = resolve_spec(flags, cmd);
    }
    if (!report["lambda"].is_number()) throw DataError("report: 'lambda' must be a number");
    spec.lambda = LambdaSpec{};
    spec.lambda.value = report["lambda"].get<double>();
    const Instance inst = build_instance(spec);
    const Vec x = json_vec(report["solution"], "solution");
    if (x.size() != inst.n) throw DataError("report solution length does not match the instance");

    CertifyOptions opts;
    if (inst.x0) opts.compare_with = d_support(*inst.x0, inst.dict);
    const CertificateReport c = first_order_certificate(inst.phi, inst.dict, inst.y, spec.lambda.value, x, opts);
    ordered_json j;
    j["command"] = "certify";
    j["lambda"] = spec.lambda.value;
    j["support"] = one_based(c.support);
    j["cosupport"] = one_based(c.cosupport);
    j["sigma"] = vec_json(c.sigma);
    j["stationarity_residual"] = c.stationarity_residual;
    j["residual_tolerance"] = c.residual_tolerance;
    j["sigma_inf_norm"] = c.sigma_inf_norm;
    j["strictly_dual_feasible"] = c.strictly_dual_feasible;
    j["certified"] = c.certified;
    j["h_j"] = c.h_j;
    j["unique"] = c.unique;
    j["sign_match_with_x0"] = c.sign_match ? ordered_json(*c.sign_match) : ordered_json(nullptr);
    emit(j.dump(2), out);
    return 0;
}

CosparseDecomposition decomposition_of(const Instance& inst) {
    if (!inst.x0) throw UsageError("criteria need the true signal; pass --signal");
    return build_decomposition_for(inst.dict, inst.phi, *inst.x0);
}

int run_experiment_command(const std::string& name, const std::vector<std::string>& params, std::uint64_t seed,
                           const std::string& out) {
    ExperimentSpec spec;
    spec.name = name;
    spec.seed = seed;
    spec.output_path = out;
    for (const auto& kv : params) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos || eq == 0) throw UsageError("--param expects key=value, got '" + kv + "'");
        spec.parameters[kv.substr(0, eq)] = kv.substr(eq + 1);
    }
    const Table t = run_experiment(spec);
    emit(write_table(t), out);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Analysis-sparse regularization: solvers, identifiability criteria and certificates"};
    app.require_subcommand(1);

    InstanceFlags flags;
    SolveFlags solve_flags;
    std::string out;

    auto* solve = app.add_subcommand("solve", "Solve the analysis Lasso (or Basis Pursuit) for an instance");
    add_instance_flags(solve, flags);
    solve->add_option("--method", solve_flags.method, "lasso | denoise | bp")
        ->check(CLI::IsMember({"lasso", "denoise", "bp"}));
    solve->add_option("--max-iters", solve_flags.max_iters, "Iteration cap")->check(CLI::PositiveNumber);
    solve->add_option("--tol", solve_flags.tol, "Relative stopping tolerance")->check(CLI::PositiveNumber);
    solve->add_option("--out", out, "Report path (JSON); stdout when absent");

    std::string report_path;
    auto* certify = app.add_subcommand("certify", "First-order optimality certificate of a solve report");
    add_instance_flags(certify, flags);
    certify->add_option("--report", report_path, "Report written by solve")->required();
    certify->add_option("--out", out, "Output path (JSON)");

    int arc_cap = 16;
    int threads = 0;
    auto* ic = app.add_subcommand("ic", "Identifiability criterion of the signal's sign vector");
    auto* arc = app.add_subcommand("arc", "Analysis recovery criterion of the signal's D-support");
    auto* warc = app.add_subcommand("warc", "Weak ARC, ||Omega||_inf,inf");
    for (auto* cmd : {ic, arc, warc}) {
        add_instance_flags(cmd, flags);
        cmd->add_option("--out", out, "Output path (JSON)");
    }
    arc->add_option("--cap", arc_cap, "Largest D-support size for the 2^|I| vertex enumeration");
    arc->add_option("--threads", threads, "Worker threads (default COSPARSE_THREADS or all cores)");

    std::string experiment_name;
    std::vector<std::string> params;
    std::uint64_t seed = 1;
    auto* experiment = app.add_subcommand("experiment", "Run tv_staircase, haar_deconv or fused_cs");
    experiment->add_option("name", experiment_name, "Experiment name")->required();
    experiment->add_option("--param", params, "Parameter key=value (repeatable)");
    experiment->add_option("--seed", seed, "Seed (default 1)");
    experiment->add_option("--out", out, "CSV output path; stdout when absent");

    auto* version = app.add_subcommand("version", "Print the version");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << " (see --help)\n";
        return static_cast<int>(ExitCode::Usage);
    }

    try {
        if (version->parsed()) {
            std::cout << "cosparse " << kVersion << '\n';
            return 0;
        }
        if (experiment->parsed()) return run_experiment_command(experiment_name, params, seed, out);

        CLI::App* cmd = nullptr;
        for (auto* c : {solve, certify, ic, arc, warc})
            if (c->parsed()) cmd = c;
        if (cmd == certify) return run_certify(flags, cmd, report_path, out);

        const InstanceSpec spec = resolve_spec(flags, cmd);
        if (flags.print_resolved) {
            emit(spec.to_json(), out);
            return 0;
        }
        ArcParams arc_params;
        arc_params.cap = arc_cap;
        arc_params.threads = threads;
        const Instance inst = build_instance(spec, arc_params);
        if (cmd == solve) return run_solve(inst, solve_flags, out);

        const CosparseDecomposition dec = decomposition_of(inst);
        ordered_json j;
        if (cmd == ic) {
            j = criterion_json(compute_ic(dec, d_support(*inst.x0, inst.dict)), dec);
        } else if (cmd == arc) {
            const CriterionResult r = compute_arc(dec, arc_params);
            j = criterion_json(r, dec);
            if (r.vertex) j["vertex"] = vec_json(*r.vertex);
        } else {
            CriterionResult r;
            r.value = compute_warc(dec);
            j = criterion_json(r, dec);
        }
        emit(j.dump(2), out);
        return 0;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return static_cast<int>(e.code());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return static_cast<int>(ExitCode::Data);
    }
}
