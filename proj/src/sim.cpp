#include "compnoma/sim.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <ostream>
#include <thread>

#include "compnoma/rng.hpp"

namespace compnoma {

namespace {

constexpr std::array<std::string_view, 4> kSchemeNames = {"benchmark_oma", "comp_only", "noma_only",
                                                          "comp_noma_proposed"};

bool uses_comp(SchemeId s) { return s == SchemeId::comp_only || s == SchemeId::comp_noma_proposed; }
bool uses_noma(SchemeId s) { return s == SchemeId::noma_only || s == SchemeId::comp_noma_proposed; }

void require(bool ok, const char* key, const std::string& what) {
    if (!ok) throw ConfigError(std::string(key) + ": " + what, key);
}

void require_densities(const std::vector<double>& v, const char* key) {
    for (double d : v) require(std::isfinite(d) && d > 0.0, key, "densities must be positive and finite");
}

}  // namespace

std::string_view scheme_name(SchemeId id) { return kSchemeNames[static_cast<std::size_t>(id)]; }

std::optional<SchemeId> parse_scheme(std::string_view name) {
    for (std::size_t i = 0; i < kSchemeNames.size(); ++i)
        if (kSchemeNames[i] == name) return static_cast<SchemeId>(i);
    return std::nullopt;
}

void ScenarioConfig::validate() const {
    require(std::isfinite(area_km2) && area_km2 > 0.0, "scenario.area_km2", "must be positive");
    require_densities(lambda_b, "scenario.lambda_b");
    require_densities(lambda_u, "scenario.lambda_u");
    for (double g : gamma_th_db) require(!std::isnan(g), "scenario.gamma_th_db", "must be a number or +/-inf");
    require(std::isfinite(tx_power_dbm), "radio.tx_power_dbm", "must be finite");
    require(subchannels >= 1, "radio.subchannels", "must be at least 1");
    require(std::isfinite(subchannel_bw_hz) && subchannel_bw_hz > 0.0, "radio.subchannel_bw_hz", "must be positive");
    require(std::isfinite(noise_psd_dbm_hz), "radio.noise_psd_dbm_hz", "must be finite");
    budget.validate();
    frame().validate();
    require(clusters >= 1, "scenario.clusters", "must be at least 1");
    require(alpha == 1.0, "scheduler.alpha", "only alpha = 1 is supported");
    require(pairing.oma_time_share > 0.0 && pairing.oma_time_share < 1.0, "pairing.oma_time_share",
            "must lie in (0, 1)");
    require(pairing.tolerance > 0.0, "pairing.tolerance", "must be positive");
    require(std::isfinite(pairing.min_gap_db), "pairing.min_gap_db", "must be finite");
    require(iterations >= 1, "sim.iterations", "must be at least 1");
    require(!schemes.empty(), "sim.schemes", "at least one scheme is required");
}

McsTable resolve_mcs_table(const ScenarioConfig& config) {
    if (config.mcs_table_path.empty()) return McsTable::default_table();
    return McsTable::load(config.mcs_table_path);
}

IterationSeeds iteration_seeds(std::uint64_t master, std::size_t lambda_b_index, std::size_t lambda_u_index,
                               std::size_t iteration) {
    return {derive_seed(master, {0xB5ULL, lambda_b_index, iteration}),
            derive_seed(master, {0x05ULL, lambda_b_index, lambda_u_index, iteration})};
}

Realization build_realization(const ScenarioConfig& config, double lambda_b, double lambda_u,
                              const IterationSeeds& seeds, RunLog* log) {
    Realization r;
    r.area = Area::from_square_km2(config.area_km2);

    Rng bs_rng = make_stream(seeds.bs_seed, Stream::base_stations);
    const auto bs_pos = sample_ppp(lambda_b, r.area, bs_rng);
    if (bs_pos.empty()) throw TopologyError("realization has no base stations");
    r.bss.resize(bs_pos.size());
    for (std::size_t b = 0; b < bs_pos.size(); ++b) r.bss[b] = {b, bs_pos[b], config.tx_power_dbm, kNoIndex};

    Rng cluster_rng = make_stream(seeds.bs_seed, Stream::clustering);
    r.clusters = cluster_bs(bs_pos, config.clusters, cluster_rng, log);
    assign_cluster_ids(r.bss, r.clusters);

    Rng user_rng = make_stream(seeds.user_seed, Stream::users);
    const auto user_pos = sample_ppp(lambda_u, r.area, user_rng);
    r.users.resize(user_pos.size());
    for (std::size_t u = 0; u < user_pos.size(); ++u) r.users[u] = {u, user_pos[u], kNoIndex, false};

    Rng shadow_rng = make_stream(seeds.user_seed, Stream::shadowing);
    r.table = build_channel_table(user_pos, bs_pos, config.budget, shadow_rng, log);
    associate_users(r.users, r.bss, r.table);

    if (config.fast_fading) {
        // Association stays on the mean gains; fading applies to the served links.
        Rng fade_rng = make_stream(seeds.user_seed, Stream::fading);
        std::exponential_distribution<double> fade(1.0);
        for (std::size_t u = 0; u < r.table.users(); ++u)
            for (std::size_t b = 0; b < r.table.bss(); ++b)
                r.table.set(u, b, r.table.gain(u, b) * fade(fade_rng), r.table.shadowing_db(u, b));
    }
    return r;
}

SchemeOutcome evaluate_scheme(const ScenarioConfig& config, const Realization& realization, SchemeId scheme,
                              double gamma_th_db, const McsTable& mcs) {
    SchemeOutcome out;
    out.scheme = scheme;

    std::vector<User> users = realization.users;
    const RadioContext ctx(realization.table, realization.bss, config.plan(), config.noise());

    const double threshold = uses_comp(scheme) ? gamma_th_db : -INFINITY;
    out.groups = classify_comp(users, realization.bss, realization.clusters, ctx, threshold);

    PairingOptions pairing = config.pairing;
    pairing.enabled = pairing.enabled && uses_noma(scheme);
    out.plan = build_serving_plan(out.groups, pairing);
    out.allocation = allocate_time(out.plan, realization.bss, realization.clusters);

    const FrameParams frame = config.frame();
    out.users.assign(users.size(), UserMetrics{});
    auto record = [&](std::size_t user, double sinr, double share) {
        UserMetrics& m = out.users[user];
        m.sinr = sinr;
        m.airtime = share;
        m.throughput_bps = user_throughput(link_rate(sinr, frame, mcs), share);
        m.covered = config.coverage_mode == CoverageMode::positive_efficiency
                        ? mcs.efficiency(sinr) > 0.0
                        : sinr > 0.0 && linear_to_db(sinr) >= config.coverage_threshold_db;
    };

    for (const Cluster& c : realization.clusters) {
        const auto& outcome = out.plan.comp[c.id];
        if (outcome.entities() == 0) continue;
        const auto mask = ctx.cluster_mask(c);
        const double share = airtime({Phase::comp, c.id}, out.allocation);
        for (const NomaPair& p : outcome.pairs) {
            record(p.strong, sinr_noma_comp(ctx, NomaRole::strong, p.zeta_strong, p.strong, mask), share);
            record(p.weak, sinr_noma_comp(ctx, NomaRole::weak, p.zeta_strong, p.weak, mask), share);
        }
        for (std::size_t u : outcome.oma_leftovers) record(u, sinr_comp(ctx, u, mask), share);
    }
    for (std::size_t b = 0; b < realization.bss.size(); ++b) {
        const auto& outcome = out.plan.noncomp[b];
        if (outcome.entities() == 0) continue;
        const double share = airtime({Phase::noncomp, b}, out.allocation);
        for (const NomaPair& p : outcome.pairs) {
            record(p.strong, sinr_noma_noncomp(ctx, NomaRole::strong, p.zeta_strong, p.strong, b), share);
            record(p.weak, sinr_noma_noncomp(ctx, NomaRole::weak, p.zeta_strong, p.weak, b), share);
        }
        for (std::size_t u : outcome.oma_leftovers) record(u, sinr_oma(ctx, u, b), share);
    }
    return out;
}

std::vector<SweepPoint> sweep_points(const ScenarioConfig& config) {
    std::vector<SweepPoint> pts;
    for (std::size_t i = 0; i < config.lambda_b.size(); ++i)
        for (std::size_t j = 0; j < config.lambda_u.size(); ++j)
            for (std::size_t k = 0; k < config.gamma_th_db.size(); ++k)
                pts.push_back({config.lambda_b[i], config.lambda_u[j], config.gamma_th_db[k], i, j, k});
    return pts;
}

namespace {

IterationSummary summarize(const SchemeOutcome& o) {
    IterationSummary s;
    s.users = o.users.size();
    for (const auto& m : o.users) {
        s.tput_sum += m.throughput_bps;
        s.covered += m.covered ? 1 : 0;
    }
    if (s.users > 0) {
        s.mean_tput_bps = s.tput_sum / static_cast<double>(s.users);
        s.coverage = static_cast<double>(s.covered) / static_cast<double>(s.users);
    }
    if (!o.allocation.theta.empty()) {
        double t = 0.0;
        for (double th : o.allocation.theta) t += th;
        s.mean_theta = t / static_cast<double>(o.allocation.theta.size());
    }
    return s;
}

// Evaluates every selected scheme on one realization at one threshold.
IterationResult evaluate_all(const ScenarioConfig& config, const Realization& r, double gamma_th_db,
                             const McsTable& mcs, bool keep_outcomes) {
    IterationResult res;
    res.schemes.reserve(config.schemes.size());
    for (SchemeId s : config.schemes) {
        SchemeOutcome o = evaluate_scheme(config, r, s, gamma_th_db, mcs);
        res.schemes.push_back(summarize(o));
        if (keep_outcomes) res.outcomes.push_back(std::move(o));
    }
    return res;
}

struct MeanCi {
    double mean = 0.0;
    double ci95 = 0.0;
};

MeanCi normal_ci(const std::vector<double>& samples) {
    MeanCi r;
    if (samples.empty()) return r;
    const double n = static_cast<double>(samples.size());
    double sum = 0.0;
    for (double x : samples) sum += x;
    r.mean = sum / n;
    if (samples.size() < 2) return r;
    double ss = 0.0;
    for (double x : samples) ss += (x - r.mean) * (x - r.mean);
    r.ci95 = 1.959963984540054 * std::sqrt(ss / (n - 1.0)) / std::sqrt(n);
    return r;
}

}  // namespace

IterationResult run_iteration(const ScenarioConfig& config, const SweepPoint& point, std::size_t iteration,
                              const McsTable& mcs, bool keep_outcomes, RunLog* log) {
    const auto seeds = iteration_seeds(config.seed, point.lambda_b_index, point.lambda_u_index, iteration);
    const Realization r = build_realization(config, point.lambda_b, point.lambda_u, seeds, log);
    return evaluate_all(config, r, point.gamma_th_db, mcs, keep_outcomes);
}

const PointSummary* MetricsReport::find(SchemeId scheme, double lambda_b, double lambda_u,
                                        double gamma_th_db) const {
    for (const auto& row : rows)
        if (row.scheme == scheme && row.point.lambda_b == lambda_b && row.point.lambda_u == lambda_u &&
            row.point.gamma_th_db == gamma_th_db)
            return &row;
    return nullptr;
}

MetricsReport run_sweep(const ScenarioConfig& config, const SweepOptions& options) {
    config.validate();
    const McsTable mcs = resolve_mcs_table(config);

    const std::size_t nb = config.lambda_b.size();
    const std::size_t nu = config.lambda_u.size();
    const std::size_t ng = config.gamma_th_db.size();
    const std::size_t ns = config.schemes.size();
    const std::size_t iters = config.iterations;

    // A task is one realization (lambda_b, lambda_u, iteration); it covers
    // every gamma_th point and scheme.
    const std::size_t tasks = ng == 0 || ns == 0 ? 0 : nb * nu * iters;
    std::vector<std::vector<IterationSummary>> results(tasks);  // [task][gamma * ns + scheme]
    std::vector<RunLog> logs(tasks);
    std::vector<std::exception_ptr> errors(tasks);

    auto run_task = [&](std::size_t t) {
        const std::size_t it = t % iters;
        const std::size_t ju = (t / iters) % nu;
        const std::size_t ib = t / (iters * nu);
        try {
            const auto seeds = iteration_seeds(config.seed, ib, ju, it);
            const Realization r = build_realization(config, config.lambda_b[ib], config.lambda_u[ju], seeds, &logs[t]);
            auto& slot = results[t];
            slot.reserve(ng * ns);
            for (std::size_t g = 0; g < ng; ++g) {
                auto res = evaluate_all(config, r, config.gamma_th_db[g], mcs, false);
                slot.insert(slot.end(), res.schemes.begin(), res.schemes.end());
            }
        } catch (...) {
            errors[t] = std::current_exception();
        }
    };

    const std::size_t workers = std::max<std::size_t>(1, std::min(options.threads, tasks));
    if (workers <= 1) {
        for (std::size_t t = 0; t < tasks; ++t) run_task(t);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w)
            pool.emplace_back([&] {
                for (std::size_t t = next++; t < tasks; t = next++) run_task(t);
            });
        for (auto& th : pool) th.join();
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);

    MetricsReport report;
    for (const auto& l : logs) report.log.merge(l);

    for (const SweepPoint& p : sweep_points(config)) {
        for (std::size_t s = 0; s < ns; ++s) {
            PointSummary row;
            row.scheme = config.schemes[s];
            row.point = p;
            row.seed = config.seed;
            row.iterations = iters;
            row.samples.reserve(iters);

            double tput_total = 0.0;
            std::size_t covered_total = 0;
            std::size_t users_total = 0;
            std::vector<double> tput_means, cov_means, thetas;
            for (std::size_t it = 0; it < iters; ++it) {
                const std::size_t t = (p.lambda_b_index * nu + p.lambda_u_index) * iters + it;
                const IterationSummary& smp = results[t][p.gamma_index * ns + s];
                row.samples.push_back(smp);
                tput_total += smp.tput_sum;
                covered_total += smp.covered;
                users_total += smp.users;
                thetas.push_back(smp.mean_theta);
                if (smp.users > 0) {
                    tput_means.push_back(smp.mean_tput_bps);
                    cov_means.push_back(smp.coverage);
                }
            }
            if (users_total > 0) {
                row.mean_tput_bps = tput_total / static_cast<double>(users_total);
                row.coverage = static_cast<double>(covered_total) / static_cast<double>(users_total);
            }
            row.tput_ci95_bps = normal_ci(tput_means).ci95;
            row.coverage_ci95 = normal_ci(cov_means).ci95;
            const auto th = normal_ci(thetas);
            row.mean_theta = th.mean;
            row.theta_ci95 = th.ci95;
            report.rows.push_back(std::move(row));
        }
    }
    return report;
}

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v < 0 ? "-inf" : "inf";
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

void write_csv(std::ostream& out, const MetricsReport& report) {
    for (std::size_t i = 0; i < kCsvColumns.size(); ++i) out << (i ? "," : "") << kCsvColumns[i];
    out << '\n';
    for (const auto& r : report.rows) {
        out << scheme_name(r.scheme) << ',' << format_double(r.point.lambda_b) << ','
            << format_double(r.point.lambda_u) << ',' << format_double(r.point.gamma_th_db) << ','
            << format_double(r.mean_tput_bps) << ',' << format_double(r.tput_ci95_bps) << ','
            << format_double(r.coverage) << ',' << format_double(r.coverage_ci95) << ',' << r.iterations << ','
            << r.seed << '\n';
    }
}

void write_iteration_csv(std::ostream& out, const MetricsReport& report) {
    out << "scheme,lambda_b,lambda_u,gamma_th_db,iteration,users,mean_tput_bps,coverage,mean_theta,seed\n";
    for (const auto& r : report.rows) {
        for (std::size_t it = 0; it < r.samples.size(); ++it) {
            const auto& s = r.samples[it];
            out << scheme_name(r.scheme) << ',' << format_double(r.point.lambda_b) << ','
                << format_double(r.point.lambda_u) << ',' << format_double(r.point.gamma_th_db) << ',' << it << ','
                << s.users << ',' << format_double(s.mean_tput_bps) << ',' << format_double(s.coverage) << ','
                << format_double(s.mean_theta) << ',' << r.seed << '\n';
        }
    }
}

}  // namespace compnoma
