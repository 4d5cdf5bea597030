// Acceptance gate. One PASS/FAIL line per criterion; exit status 1 if any fails.
//
//   acceptance [--threads N] [--iterations N] [--out-dir DIR]
//
// Trend comparisons are gated by 95% confidence intervals: "a >= b within CI"
// holds when a + ci_a >= b - ci_b.

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "compnoma/config.hpp"
#include "compnoma/sim.hpp"
#include "compnoma/validation.hpp"

using namespace compnoma;

namespace {

// Pinned settings. Changing any of these changes what the gate certifies.
constexpr std::size_t kIterations = 100;
constexpr double kLambdaB = 16.0;
constexpr double kFig3Gamma = -6.5;
constexpr double kFig45LambdaU = 50.0;
constexpr std::size_t kOracleTopologies = 20;
constexpr double kOracleRelTol = 1e-9;
constexpr double kZetaTol = 1e-3;

struct Metric {
    double mean = 0.0;
    double ci = 0.0;
};

Metric tput(const PointSummary& r) { return {r.mean_tput_bps, r.tput_ci95_bps}; }
Metric cov(const PointSummary& r) { return {r.coverage, r.coverage_ci95}; }
Metric theta(const PointSummary& r) { return {r.mean_theta, r.theta_ci95}; }

bool geq_within_ci(const Metric& a, const Metric& b) { return a.mean + a.ci >= b.mean - b.ci; }
bool separated_above(const Metric& a, const Metric& b) { return a.mean - a.ci > b.mean + b.ci; }

std::string fmt(double v, int prec = 4) {
    std::ostringstream s;
    s << std::setprecision(prec) << v;
    return s.str();
}

std::string fmt_mbps(const Metric& m) { return fmt(m.mean / 1e6) + "+-" + fmt(m.ci / 1e6, 2); }
std::string fmt_frac(const Metric& m) { return fmt(m.mean) + "+-" + fmt(m.ci, 2); }

int failures = 0;

void report(const std::string& name, bool ok, const std::string& detail) {
    std::cout << (ok ? "PASS " : "FAIL ") << name << ": " << detail << std::endl;
    if (!ok) ++failures;
}

const PointSummary& row(const MetricsReport& r, SchemeId s, double lb, double lu, double g) {
    const auto* p = r.find(s, lb, lu, g);
    if (!p) throw std::logic_error("missing sweep row");
    return *p;
}

void write_csv_file(const std::string& dir, const std::string& name, const MetricsReport& r) {
    if (dir.empty()) return;
    std::filesystem::create_directories(dir);
    std::ofstream out(std::filesystem::path(dir) / name, std::ios::binary);
    write_csv(out, r);
}

void fig3_trend(const ScenarioConfig& cfg, const MetricsReport& r) {
    bool ok = true;
    std::string detail = "proposed Mbps";
    for (std::size_t i = 0; i < cfg.lambda_u.size(); ++i) {
        const auto cur = tput(row(r, SchemeId::comp_noma_proposed, kLambdaB, cfg.lambda_u[i], kFig3Gamma));
        detail += " " + fmt(cur.mean / 1e6, 3);
        if (i == 0) continue;
        const auto prev = tput(row(r, SchemeId::comp_noma_proposed, kLambdaB, cfg.lambda_u[i - 1], kFig3Gamma));
        if (!geq_within_ci(prev, cur)) {
            ok = false;
            detail += "(rise)";
        }
    }
    const double lu0 = cfg.lambda_u.front();
    const auto prop = tput(row(r, SchemeId::comp_noma_proposed, kLambdaB, lu0, kFig3Gamma));
    const auto comp = tput(row(r, SchemeId::comp_only, kLambdaB, lu0, kFig3Gamma));
    const bool sep = separated_above(prop, comp);
    detail += "; at lambda_u=" + fmt(lu0) + " proposed " + fmt_mbps(prop) + " vs comp_only " + fmt_mbps(comp);
    report("fig3_throughput_trend", ok && sep, detail);
}

void noma_gain(const ScenarioConfig& cfg, const MetricsReport& r) {
    bool ok = true;
    std::string detail = "noma_only/benchmark Mbps";
    for (double lu : cfg.lambda_u) {
        const auto n = tput(row(r, SchemeId::noma_only, kLambdaB, lu, kFig3Gamma));
        const auto b = tput(row(r, SchemeId::benchmark_oma, kLambdaB, lu, kFig3Gamma));
        ok = ok && n.mean >= b.mean;
        detail += " " + fmt(n.mean / 1e6, 3) + "/" + fmt(b.mean / 1e6, 3);
    }
    report("noma_gain", ok, detail);
}

void theta_trend(const ScenarioConfig& cfg, const MetricsReport& r) {
    bool ok = true;
    std::string detail = "proposed mean theta";
    for (std::size_t i = 0; i < cfg.lambda_u.size(); ++i) {
        const auto cur = theta(row(r, SchemeId::comp_noma_proposed, kLambdaB, cfg.lambda_u[i], kFig3Gamma));
        detail += " " + fmt(cur.mean);
        if (i == 0) continue;
        const auto prev = theta(row(r, SchemeId::comp_noma_proposed, kLambdaB, cfg.lambda_u[i - 1], kFig3Gamma));
        if (!geq_within_ci(cur, prev)) {
            ok = false;
            detail += "(drop)";
        }
    }
    report("theta_trend", ok, detail);
}

void fig5_ordering(const ScenarioConfig& cfg, const MetricsReport& r) {
    const SchemeId order[] = {SchemeId::comp_only, SchemeId::comp_noma_proposed, SchemeId::benchmark_oma,
                              SchemeId::noma_only};
    bool ok = true;
    std::string bad;
    for (double g : cfg.gamma_th_db) {
        for (std::size_t k = 0; k + 1 < 4; ++k) {
            const auto hi = cov(row(r, order[k], kLambdaB, kFig45LambdaU, g));
            const auto lo = cov(row(r, order[k + 1], kLambdaB, kFig45LambdaU, g));
            if (!geq_within_ci(hi, lo)) {
                ok = false;
                bad += " " + fmt(g) + "dB:" + std::string(scheme_name(order[k])) + "=" + fmt_frac(hi) + "<" +
                       std::string(scheme_name(order[k + 1])) + "=" + fmt_frac(lo);
            }
        }
    }
    report("fig5_coverage_ordering", ok, ok ? "comp_only >= proposed >= benchmark >= noma_only at every gamma_th"
                                            : "violations" + bad);
}

void fig5_monotone(const ScenarioConfig& cfg, const MetricsReport& r) {
    bool ok = true;
    std::string detail;
    for (SchemeId s : {SchemeId::comp_only, SchemeId::comp_noma_proposed}) {
        detail += std::string(detail.empty() ? "" : "; ") + std::string(scheme_name(s));
        for (std::size_t i = 0; i < cfg.gamma_th_db.size(); ++i) {
            const auto cur = cov(row(r, s, kLambdaB, kFig45LambdaU, cfg.gamma_th_db[i]));
            detail += " " + fmt(cur.mean);
            if (i == 0) continue;
            const auto prev = cov(row(r, s, kLambdaB, kFig45LambdaU, cfg.gamma_th_db[i - 1]));
            if (!geq_within_ci(cur, prev)) {
                ok = false;
                detail += "(drop)";
            }
        }
    }
    report("fig5_coverage_monotone", ok, detail);
}

void fig4_crossover(const ScenarioConfig& cfg, const MetricsReport& r) {
    // Find the longest prefix where proposed is CI-separated above comp_only;
    // the crossover needs a non-empty prefix and comp_only >= proposed at the top.
    const auto& gs = cfg.gamma_th_db;
    std::size_t prefix = 0;
    std::string detail = "proposed/comp_only Mbps";
    for (std::size_t i = 0; i < gs.size(); ++i) {
        const auto p = tput(row(r, SchemeId::comp_noma_proposed, kLambdaB, kFig45LambdaU, gs[i]));
        const auto c = tput(row(r, SchemeId::comp_only, kLambdaB, kFig45LambdaU, gs[i]));
        if (prefix == i && separated_above(p, c)) ++prefix;
        detail += " " + fmt(gs[i]) + ":" + fmt(p.mean / 1e6, 3) + "/" + fmt(c.mean / 1e6, 3);
    }
    const auto top_p = tput(row(r, SchemeId::comp_noma_proposed, kLambdaB, kFig45LambdaU, gs.back()));
    const auto top_c = tput(row(r, SchemeId::comp_only, kLambdaB, kFig45LambdaU, gs.back()));
    const bool top = top_c.mean >= top_p.mean;
    const bool ok = prefix > 0 && prefix < gs.size() && top;
    detail += prefix > 0 && prefix < gs.size() ? "; separated below " + fmt(gs[prefix]) + " dB"
                                               : "; no crossover";
    report("fig4_crossover", ok, detail);
}

void oracle_suite() {
    validation::ValidationOptions opt;
    opt.topologies = kOracleTopologies;
    opt.rel_tol = kOracleRelTol;
    opt.zeta_tol = kZetaTol;
    bool ok = true;
    std::string detail;
    for (const auto& c : validation::run_validation(opt)) {
        ok = ok && c.passed;
        detail += std::string(detail.empty() ? "" : ", ") + c.name + (c.passed ? "" : "[" + c.detail + "]");
    }

    // Invariants on every iteration of a full-size run, every scheme.
    ScenarioConfig cfg;
    cfg.lambda_b = {kLambdaB};
    cfg.lambda_u = {90.0};
    cfg.gamma_th_db = {kFig3Gamma};
    const auto& mcs = McsTable::default_table();
    const SweepPoint pt{kLambdaB, 90.0, kFig3Gamma, 0, 0, 0};
    std::size_t checked = 0, violations = 0;
    std::string first;
    for (std::size_t it = 0; it < kIterations; ++it) {
        const auto seeds = iteration_seeds(cfg.seed, 0, 0, it);
        const auto real = build_realization(cfg, pt.lambda_b, pt.lambda_u, seeds);
        for (SchemeId s : kAllSchemes) {
            const auto v = validation::check_outcome(evaluate_scheme(cfg, real, s, pt.gamma_th_db, mcs), real,
                                                     cfg.pairing);
            ++checked;
            violations += v.size();
            if (!v.empty() && first.empty()) first = v.front();
        }
    }
    ok = ok && violations == 0;
    detail += "; invariants on " + std::to_string(checked) + " scheme outcomes, " + std::to_string(violations) +
              " violations" + (first.empty() ? "" : " (" + first + ")");
    report("oracle_suite", ok, detail);
}

void collapse_identities() {
    ScenarioConfig cfg;
    const auto& mcs = McsTable::default_table();
    std::size_t users = 0, mismatches = 0;
    auto same = [&](const SchemeOutcome& a, const SchemeOutcome& b) {
        if (a.users.size() != b.users.size()) {
            ++mismatches;
            return;
        }
        for (std::size_t u = 0; u < a.users.size(); ++u) {
            ++users;
            const auto &x = a.users[u], &y = b.users[u];
            if (x.throughput_bps != y.throughput_bps || x.sinr != y.sinr || x.airtime != y.airtime ||
                x.covered != y.covered)
                ++mismatches;
        }
    };
    for (std::size_t j = 0; j < cfg.lambda_u.size(); ++j)
        for (std::size_t it = 0; it < 10; ++it) {
            const auto real = build_realization(cfg, kLambdaB, cfg.lambda_u[j], iteration_seeds(cfg.seed, 0, j, it));
            same(evaluate_scheme(cfg, real, SchemeId::comp_only, -INFINITY, mcs),
                 evaluate_scheme(cfg, real, SchemeId::benchmark_oma, -INFINITY, mcs));
            same(evaluate_scheme(cfg, real, SchemeId::comp_noma_proposed, -INFINITY, mcs),
                 evaluate_scheme(cfg, real, SchemeId::noma_only, -INFINITY, mcs));
        }
    report("scheme_collapse", mismatches == 0,
           std::to_string(users) + " user comparisons, " + std::to_string(mismatches) + " mismatches");
}

void determinism(std::size_t threads) {
    ScenarioConfig cfg;
    cfg.lambda_b = {kLambdaB};
    cfg.lambda_u = {40.0, 150.0};
    cfg.gamma_th_db = {-INFINITY, -10.0, -6.5, 0.0};
    cfg.iterations = 10;
    auto csv = [&](std::size_t t) {
        std::ostringstream s;
        write_csv(s, run_sweep(cfg, {t}));
        return s.str();
    };
    const auto a = csv(1);
    const auto b = csv(1);
    const std::size_t many = std::max<std::size_t>(threads, 4);
    const auto c = csv(many);
    report("determinism", a == b && a == c,
           "1 thread twice and " + std::to_string(many) + " threads: " + (a == b && a == c ? "identical" : "differ") +
               " (" + std::to_string(a.size()) + " bytes)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Acceptance gate"};
    std::size_t threads = 1;
    std::size_t iterations = kIterations;
    std::string out_dir;
    app.add_option("--threads", threads, "Worker threads for the sweeps");
    app.add_option("--iterations", iterations, "Iterations per point (the gate is defined at 100)");
    app.add_option("--out-dir", out_dir, "Write the sweep CSVs here");
    CLI11_PARSE(app, argc, argv);

    try {
        ScenarioConfig fig3 = figure3_preset();
        fig3.lambda_b = {kLambdaB};
        fig3.gamma_th_db = {kFig3Gamma};
        fig3.iterations = iterations;
        const auto r3 = run_sweep(fig3, {threads});
        write_csv_file(out_dir, "fig3.csv", r3);

        ScenarioConfig fig45 = figure4_preset();
        fig45.lambda_b = {kLambdaB};
        fig45.lambda_u = {kFig45LambdaU};
        fig45.iterations = iterations;
        const auto r45 = run_sweep(fig45, {threads});
        write_csv_file(out_dir, "fig45.csv", r45);

        fig3_trend(fig3, r3);
        fig5_ordering(fig45, r45);
        fig5_monotone(fig45, r45);
        fig4_crossover(fig45, r45);
        noma_gain(fig3, r3);
        theta_trend(fig3, r3);
        oracle_suite();
        collapse_identities();
        determinism(threads);
    } catch (const std::exception& e) {
        std::cout << "FAIL harness: " << e.what() << std::endl;
        return 2;
    }
    std::cout << (9 - failures) << "/9 criteria passed" << std::endl;
    return failures == 0 ? 0 : 1;
}
