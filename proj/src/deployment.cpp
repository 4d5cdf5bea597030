#include "compnoma/deployment.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "compnoma/radio.hpp"

namespace compnoma {

Area Area::from_square_km2(double area_km2) {
    if (!(area_km2 > 0.0) || !std::isfinite(area_km2))
        throw ConfigError("area must be positive and finite", "area_km2");
    return Area(std::sqrt(area_km2));
}

Area Area::from_side_km(double side_km) {
    if (!(side_km > 0.0) || !std::isfinite(side_km))
        throw ConfigError("area side must be positive and finite", "area_km2");
    return Area(side_km);
}

std::vector<Point> sample_ppp(double density_per_km2, const Area& area, Rng& rng) {
    if (!(density_per_km2 >= 0.0) || !std::isfinite(density_per_km2))
        throw ConfigError("PPP density must be non-negative", "density");
    const double mean = density_per_km2 * area.area_km2();
    if (mean == 0.0) return {};

    std::poisson_distribution<std::size_t> count_dist(mean);
    const std::size_t n = count_dist(rng);
    std::uniform_real_distribution<double> coord(0.0, area.side_km());
    std::vector<Point> pts(n);
    for (auto& p : pts) {
        p.x = coord(rng);
        p.y = coord(rng);
    }
    return pts;
}

namespace {

struct LloydResult {
    std::vector<std::size_t> assignment;
    std::vector<Point> centroids;
    double inertia = 0.0;
};

std::size_t nearest(const Point& p, const std::vector<Point>& centroids) {
    std::size_t best = 0;
    double best_d = squared_distance(p, centroids[0]);
    for (std::size_t c = 1; c < centroids.size(); ++c) {
        const double d = squared_distance(p, centroids[c]);
        if (d < best_d) {
            best_d = d;
            best = c;
        }
    }
    return best;
}

std::vector<Point> kmeanspp_seeds(std::span<const Point> pts, std::size_t k, Rng& rng) {
    std::vector<Point> seeds;
    seeds.reserve(k);
    std::uniform_int_distribution<std::size_t> first(0, pts.size() - 1);
    seeds.push_back(pts[first(rng)]);

    std::vector<double> d2(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) d2[i] = squared_distance(pts[i], seeds[0]);

    std::uniform_real_distribution<double> unit(0.0, 1.0);
    while (seeds.size() < k) {
        const double total = std::accumulate(d2.begin(), d2.end(), 0.0);
        std::size_t pick = 0;
        if (total > 0.0) {
            const double target = unit(rng) * total;
            double acc = 0.0;
            pick = pts.size() - 1;
            for (std::size_t i = 0; i < pts.size(); ++i) {
                acc += d2[i];
                if (acc > target && d2[i] > 0.0) {
                    pick = i;
                    break;
                }
            }
        } else {
            // All remaining points coincide with a seed.
            pick = seeds.size() % pts.size();
        }
        seeds.push_back(pts[pick]);
        for (std::size_t i = 0; i < pts.size(); ++i)
            d2[i] = std::min(d2[i], squared_distance(pts[i], seeds.back()));
    }
    return seeds;
}

LloydResult lloyd(std::span<const Point> pts, std::vector<Point> centroids, std::size_t max_iterations) {
    const std::size_t k = centroids.size();
    std::vector<std::size_t> assign(pts.size(), kNoIndex);

    for (std::size_t it = 0;; ++it) {
        bool changed = false;
        for (std::size_t i = 0; i < pts.size(); ++i) {
            const std::size_t c = nearest(pts[i], centroids);
            if (c != assign[i]) {
                assign[i] = c;
                changed = true;
            }
        }
        if (!changed || it + 1 >= max_iterations) break;

        std::vector<double> sx(k, 0.0), sy(k, 0.0);
        std::vector<std::size_t> count(k, 0);
        for (std::size_t i = 0; i < pts.size(); ++i) {
            sx[assign[i]] += pts[i].x;
            sy[assign[i]] += pts[i].y;
            ++count[assign[i]];
        }
        for (std::size_t c = 0; c < k; ++c) {
            if (count[c] > 0) {
                centroids[c] = {sx[c] / static_cast<double>(count[c]), sy[c] / static_cast<double>(count[c])};
                continue;
            }
            // Empty cluster: re-seed at the point farthest from its current
            // centroid, taken from a cluster that can spare one.
            std::size_t far = kNoIndex;
            double far_d = -1.0;
            for (std::size_t i = 0; i < pts.size(); ++i) {
                if (count[assign[i]] < 2) continue;
                const double d = squared_distance(pts[i], centroids[assign[i]]);
                if (d > far_d) {
                    far_d = d;
                    far = i;
                }
            }
            if (far != kNoIndex) {
                --count[assign[far]];
                assign[far] = c;
                count[c] = 1;
                centroids[c] = pts[far];
            }
        }
    }

    LloydResult r{std::move(assign), std::move(centroids), 0.0};
    for (std::size_t i = 0; i < pts.size(); ++i) r.inertia += squared_distance(pts[i], r.centroids[r.assignment[i]]);
    return r;
}

}  // namespace

std::vector<Cluster> cluster_bs(std::span<const Point> bs_positions, std::size_t k, Rng& rng, RunLog* log,
                                const KMeansOptions& options) {
    if (k == 0) throw ConfigError("number of clusters must be at least 1", "clusters");
    if (bs_positions.empty()) throw TopologyError("cannot cluster an empty set of base stations");
    if (k > bs_positions.size()) {
        if (log)
            log->warn("cluster count " + std::to_string(k) + " clamped to BS count " +
                      std::to_string(bs_positions.size()));
        k = bs_positions.size();
    }

    LloydResult best;
    bool have_best = false;
    const std::size_t restarts = std::max<std::size_t>(1, options.restarts);
    for (std::size_t r = 0; r < restarts; ++r) {
        LloydResult run =
            lloyd(bs_positions, kmeanspp_seeds(bs_positions, k, rng), std::max<std::size_t>(1, options.max_iterations));
        if (!have_best || run.inertia < best.inertia) {
            best = std::move(run);
            have_best = true;
        }
    }

    std::vector<Cluster> clusters(k);
    for (std::size_t c = 0; c < k; ++c) clusters[c].centroid = best.centroids[c];
    for (std::size_t i = 0; i < bs_positions.size(); ++i) clusters[best.assignment[i]].member_bs.push_back(i);

    std::erase_if(clusters, [](const Cluster& c) { return c.member_bs.empty(); });
    std::sort(clusters.begin(), clusters.end(),
              [](const Cluster& a, const Cluster& b) { return a.member_bs.front() < b.member_bs.front(); });
    for (std::size_t c = 0; c < clusters.size(); ++c) clusters[c].id = c;
    return clusters;
}

void assign_cluster_ids(std::span<BaseStation> bss, std::span<const Cluster> clusters) {
    for (const auto& c : clusters)
        for (std::size_t b : c.member_bs) bss[b].cluster_id = c.id;
}

void associate_users(std::span<User> users, std::span<const BaseStation> bss, const ChannelTable& gains) {
    if (bss.empty()) throw TopologyError("no base stations to associate users with");
    std::vector<double> power(bss.size());
    for (std::size_t b = 0; b < bss.size(); ++b) power[b] = db_to_linear(bss[b].tx_power_dbm);

    for (auto& u : users) {
        std::size_t best = 0;
        double best_rx = power[0] * gains.gain(u.id, 0);
        for (std::size_t b = 1; b < bss.size(); ++b) {
            const double rx = power[b] * gains.gain(u.id, b);
            if (rx > best_rx) {
                best_rx = rx;
                best = b;
            }
        }
        u.serving_bs = best;
    }
}

}  // namespace compnoma
