#include "qmet/asymmetry.hpp"
#include "qmet/bounds.hpp"
#include "qmet/errors.hpp"
#include "qmet/estimator.hpp"
#include "qmet/io.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <string>

namespace {

using nlohmann::json;

qmet::PriorDistribution make_prior(const std::string& spec) {
    if (spec == "uniform") return qmet::PriorDistribution::uniform_2pi();
    if (spec.rfind("gauss:", 0) == 0) {
        try {
            return qmet::PriorDistribution::wrapped_gaussian(std::stod(spec.substr(6)));
        } catch (const std::exception&) {
            throw qmet::SpecParseError("bad sigma in prior '" + spec + "'");
        }
    }
    throw qmet::SpecParseError("unknown prior '" + spec + "' (use uniform or gauss:<sigma>)");
}

struct AsymmetryArgs {
    std::string state, generator, out = "json";
    bool bits = false;
};

int cmd_asymmetry(const AsymmetryArgs& a) {
    const auto g = qmet::io::parse_generator(a.generator);
    const auto psi = qmet::io::parse_state(a.state);
    const qmet::DensityOperator rho(psi);
    const double asym = qmet::g_asymmetry(psi, g);
    const double hg = qmet::generator_entropy(psi, g);
    const double dg = qmet::generator_variance(psi, g);
    const auto summary = qmet::summarize(g);
    const double unit = a.bits ? std::numbers::ln2 : 1.0;

    if (a.out == "text") {
        std::printf("A_G                 %.9g %s\n", asym / unit, a.bits ? "bits" : "nats");
        std::printf("H(G|rho)            %.9g %s\n", hg / unit, a.bits ? "bits" : "nats");
        std::printf("S(rho)              %.9g %s\n", 0.0, a.bits ? "bits" : "nats");
        std::printf("DeltaG              %.9g\n", dg);
        std::printf("distinct_eigenvalues %zu\n", summary.distinct_count);
        return 0;
    }
    json j;
    j["schema_version"] = 1;
    j["type"] = "asymmetry_report";
    j["config"] = {{"state", a.state}, {"generator", a.generator}, {"out", a.out}, {"bits", a.bits}};
    j["entropy_units"] = a.bits ? "bits" : "nats";
    j["asymmetry"] = qmet::io::round_sig(asym / unit);
    j["generator_entropy"] = qmet::io::round_sig(hg / unit);
    j["state_entropy"] = 0.0; // pure-state input
    j["delta_g"] = qmet::io::round_sig(dg);
    j["distinct_eigenvalues"] = summary.distinct_count;
    std::cout << j.dump(2) << "\n";
    return 0;
}

struct BoundsArgs {
    std::string preset, prior = "uniform", out = "json";
    int K = 0, M = 1, q = 2;
    long n = 0, modes = 0;
    double meanN = 0.0;
    bool bits = false;
};

int cmd_bounds(const BoundsArgs& a) {
    const auto prior = make_prior(a.prior);
    qmet::SchemeQuery query;
    query.preset = a.preset;
    query.K = a.K;
    query.M = a.M;
    query.q = a.q;
    query.n = a.n;
    query.modes = a.modes;
    query.mean_n = a.meanN;
    const auto report = qmet::scheme_bound(query, prior);
    json j = qmet::io::to_json(report, a.bits);
    j["config"] = {{"preset", a.preset}, {"K", a.K},         {"M", a.M},
                   {"q", a.q},           {"n", a.n},         {"modes", a.modes},
                   {"meanN", a.meanN},   {"prior", a.prior}, {"bits", a.bits}};
    std::cout << j.dump(2) << "\n";
    return 0;
}

struct SimArgs {
    std::string preset = "none", prior = "uniform", policy = "adaptive", csv;
    int K = 1, M = 1, q = 2, threads = 0, mi_bins = 0;
    std::uint64_t trials = 1000, seed = 1, grid = std::uint64_t{1} << 14;
    bool bits = false, map = false, canonical = false;
};

int cmd_simulate(const SimArgs& a) {
    const auto prior = make_prior(a.prior);
    qmet::SimulationOptions opt;
    opt.trials = a.trials;
    opt.seed = a.seed;
    opt.policy = qmet::policy_from_string(a.policy);
    opt.grid = std::size_t(a.grid);
    opt.threads = a.threads;
    opt.mi_bins = a.mi_bins;
    opt.map_estimate = a.map;
    opt.keep_records = !a.csv.empty();

    qmet::EstimationReport report;
    if (a.canonical) {
        report = qmet::canonical_sample(a.K, prior, a.trials, a.seed);
        if (opt.mi_bins > 0) throw qmet::BadParameters("--mi-bins is not applicable with --canonical");
    } else {
        const auto spec = qmet::preset(a.preset, a.K, a.M, a.q);
        report = qmet::simulate(spec, prior, opt);
    }

    if (!a.csv.empty()) {
        if (a.canonical) throw qmet::BadParameters("--csv is not applicable with --canonical");
        std::ofstream out(a.csv);
        if (!out) throw qmet::Error("cannot open '" + a.csv + "' for writing");
        qmet::io::write_csv(out, report.records);
        report.records.clear();
    }

    json j = qmet::io::to_json(report, a.bits);
    j["config"] = {{"preset", a.preset},   {"K", a.K},
                   {"M", a.M},             {"q", a.q},
                   {"trials", a.trials},   {"seed", a.seed},
                   {"policy", a.policy},   {"grid", a.grid},
                   {"threads", a.threads}, {"mi_bins", a.mi_bins},
                   {"prior", a.prior},     {"bits", a.bits},
                   {"map", a.map},         {"canonical", a.canonical},
                   {"csv", a.csv}};
    std::cout << j.dump(2) << "\n";
    return 0;
}

struct ScanArgs {
    std::string preset, prior = "uniform", fit = "power", k_range, policy = "adaptive";
    int M = 1, q = 2, threads = 0;
    std::uint64_t trials = 1000, seed = 1, grid = std::uint64_t{1} << 14;
};

int cmd_scan(const ScanArgs& a) {
    const auto dots = a.k_range.find("..");
    if (dots == std::string::npos)
        throw qmet::SpecParseError("--K-range must look like a..b");
    int k_lo = 0, k_hi = 0;
    try {
        k_lo = std::stoi(a.k_range.substr(0, dots));
        k_hi = std::stoi(a.k_range.substr(dots + 2));
    } catch (const std::exception&) {
        throw qmet::SpecParseError("--K-range must look like a..b");
    }
    const auto prior = make_prior(a.prior);
    qmet::SimulationOptions opt;
    opt.trials = a.trials;
    opt.seed = a.seed;
    opt.grid = std::size_t(a.grid);
    opt.threads = a.threads;
    opt.policy = qmet::policy_from_string(a.policy);
    const auto report = qmet::scaling_scan(a.preset, k_lo, k_hi, a.M, a.q, prior, opt,
                                           qmet::fit_model_from_string(a.fit));
    json j = qmet::io::to_json(report);
    j["config"] = {{"preset", a.preset}, {"K_range", a.k_range}, {"M", a.M},
                   {"q", a.q},           {"trials", a.trials},   {"seed", a.seed},
                   {"grid", a.grid},     {"threads", a.threads}, {"fit", a.fit},
                   {"prior", a.prior},   {"policy", a.policy}};
    std::cout << j.dump(2) << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Entropic bounds and Monte Carlo simulation for nonlinear phase estimation"};
    app.require_subcommand(1);

    AsymmetryArgs aa;
    auto* asym = app.add_subcommand("asymmetry", "Asymmetry and entropy of a state under a generator");
    asym->add_option("--state", aa.state, "State spec (kind:args or @file.json)")->required();
    asym->add_option("--generator", aa.generator, "Generator spec (kind:args or @file.json)")->required();
    asym->add_option("--out", aa.out, "Output format: json|text")->check(CLI::IsMember({"json", "text"}));
    asym->add_flag("--bits", aa.bits, "Report entropies in bits instead of nats");

    BoundsArgs ba;
    auto* bounds = app.add_subcommand("bounds", "Closed-form scheme bounds");
    bounds->add_option("--preset", ba.preset, "Scheme preset name")->required();
    bounds->add_option("--K", ba.K, "Number of bits / components");
    bounds->add_option("--M", ba.M, "Copies per component");
    bounds->add_option("--q", ba.q, "Nonlinearity power for power_q_iterative");
    bounds->add_option("--n", ba.n, "Qubit count for qubit_universal");
    bounds->add_option("--modes", ba.modes, "Mode count for optical_universal");
    bounds->add_option("--meanN", ba.meanN, "Mean photon number for optical_universal");
    bounds->add_option("--prior", ba.prior, "Prior: uniform or gauss:<sigma>");
    bounds->add_flag("--bits", ba.bits, "Report entropies in bits instead of nats");

    SimArgs sa;
    auto* sim = app.add_subcommand("simulate", "Monte Carlo simulation of an estimation scheme");
    sim->add_option("--preset", sa.preset, "Scheme preset name, or 'none'");
    sim->add_option("--K", sa.K, "Number of bits / components");
    sim->add_option("--M", sa.M, "Copies per component");
    sim->add_option("--q", sa.q, "Nonlinearity power for power_q_iterative");
    sim->add_option("--trials", sa.trials, "Monte Carlo trials");
    sim->add_option("--seed", sa.seed, "Master RNG seed");
    sim->add_option("--policy", sa.policy, "Feedback: adaptive|nonadaptive|bitwise");
    sim->add_option("--grid", sa.grid, "Posterior grid size (power of two >= 1024)");
    sim->add_option("--threads", sa.threads, "Worker threads (0 = available cores)");
    sim->add_option("--mi-bins", sa.mi_bins,
                    "Mutual-information histogram bins (0 = auto, -1 = skip)");
    sim->add_option("--csv", sa.csv,
                    "Write per-trial CSV (columns: trial,phi,phi_hat,wrapped_error,n_outcomes)");
    sim->add_option("--prior", sa.prior, "Prior: uniform or gauss:<sigma>");
    sim->add_flag("--bits", sa.bits, "Report entropies in bits instead of nats");
    sim->add_flag("--map", sa.map, "Use the posterior maximum instead of the circular mean");
    sim->add_flag("--canonical", sa.canonical, "Sample the canonical phase measurement for K bits");

    ScanArgs ca;
    auto* scan = app.add_subcommand("scan", "Scaling scan over K with a least-squares fit");
    scan->add_option("--preset", ca.preset, "Scheme preset name")->required();
    scan->add_option("--K-range", ca.k_range, "Inclusive K range, e.g. 3..9")->required();
    scan->add_option("--M", ca.M, "Copies per component");
    scan->add_option("--q", ca.q, "Nonlinearity power for power_q_iterative");
    scan->add_option("--trials", ca.trials, "Trials per scan point");
    scan->add_option("--seed", ca.seed, "Master RNG seed");
    scan->add_option("--grid", ca.grid, "Posterior grid size (power of two >= 1024)");
    scan->add_option("--threads", ca.threads, "Worker threads (0 = available cores)");
    scan->add_option("--policy", ca.policy, "Feedback: adaptive|nonadaptive|bitwise");
    scan->add_option("--fit", ca.fit, "Fit model: power|exp|exp-sqrt")
        ->check(CLI::IsMember({"power", "exp", "exp-sqrt"}));
    scan->add_option("--prior", ca.prior, "Prior: uniform or gauss:<sigma>");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (asym->parsed()) return cmd_asymmetry(aa);
        if (bounds->parsed()) return cmd_bounds(ba);
        if (sim->parsed()) return cmd_simulate(sa);
        if (scan->parsed()) return cmd_scan(ca);
    } catch (const qmet::SpecParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const qmet::BadParameters& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const qmet::DimensionMismatch& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const qmet::UnknownPreset& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const qmet::InsufficientSamples& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 5;
    } catch (const qmet::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
