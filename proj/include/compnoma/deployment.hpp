#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "compnoma/common.hpp"
#include "compnoma/rng.hpp"

namespace compnoma {

class ChannelTable;

// Square deployment region. No wrap-around.
class Area {
public:
    static Area from_square_km2(double area_km2);
    static Area from_side_km(double side_km);

    double side_km() const noexcept { return side_; }
    double area_km2() const noexcept { return side_ * side_; }
    bool contains(const Point& p) const noexcept {
        return p.x >= 0.0 && p.x <= side_ && p.y >= 0.0 && p.y <= side_;
    }

private:
    explicit Area(double side) : side_(side) {}
    double side_;
};

struct BaseStation {
    std::size_t id = 0;
    Point position;
    double tx_power_dbm = 46.0;
    std::size_t cluster_id = kNoIndex;
};

struct User {
    std::size_t id = 0;
    Point position;
    std::size_t serving_bs = kNoIndex;
    bool is_comp = false;
};

struct Cluster {
    std::size_t id = 0;
    std::vector<std::size_t> member_bs;
    Point centroid;
};

// Homogeneous PPP: Poisson(density * area) points, i.i.d. uniform on the square.
std::vector<Point> sample_ppp(double density_per_km2, const Area& area, Rng& rng);

struct KMeansOptions {
    std::size_t max_iterations = 100;
    // Independent k-means++ restarts; the lowest within-cluster sum of squares wins.
    std::size_t restarts = 10;
};

// Lloyd's algorithm with k-means++ seeding. k larger than the number of
// points is clamped (with a warning in `log`). Clusters are ordered by their
// lowest member index and member lists are sorted ascending.
std::vector<Cluster> cluster_bs(std::span<const Point> bs_positions, std::size_t k, Rng& rng,
                                RunLog* log = nullptr, const KMeansOptions& options = {});

// Writes each BS's cluster_id from a clustering result.
void assign_cluster_ids(std::span<BaseStation> bss, std::span<const Cluster> clusters);

// Serving BS = argmax of linear received power P^b * g; ties go to the lowest BS id.
void associate_users(std::span<User> users, std::span<const BaseStation> bss, const ChannelTable& gains);

}  // namespace compnoma
