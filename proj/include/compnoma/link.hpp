#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace compnoma {

struct McsRow {
    double min_sinr_db = 0.0;
    double efficiency = 0.0;  // bits per symbol
};

// SINR-threshold to spectral-efficiency map. Thresholds and efficiencies are
// strictly increasing; below the first threshold the efficiency is zero.
class McsTable {
public:
    // Throws std::invalid_argument on empty or non-increasing rows.
    explicit McsTable(std::vector<McsRow> rows);

    // Whitespace-separated "min_sinr_db efficiency" rows, '#' starts a comment.
    static McsTable parse(std::string_view text);
    static McsTable load(const std::filesystem::path& path);
    // 15-row CQI-style table (4-bit CQI efficiencies).
    static const McsTable& default_table();

    // Efficiency of the highest row whose threshold is <= the SINR in dB.
    double efficiency(double sinr_linear) const;
    std::span<const McsRow> rows() const noexcept { return rows_; }

private:
    std::vector<McsRow> rows_;
};

struct FrameParams {
    double subcarriers = 12.0;  // per subchannel
    double symbols = 14.0;      // per subframe
    double subframe_s = 1e-3;
    std::size_t subchannels = 100;

    void validate() const;
};

// eta * sc * sy * M / t_sc in bit/s.
double link_rate(double sinr_linear, const FrameParams& frame, const McsTable& table);

inline double user_throughput(double link_rate_bps, double airtime) { return link_rate_bps * airtime; }

enum class CoverageMode {
    positive_efficiency,  // covered iff the MCS table yields eta > 0
    sinr_threshold,       // covered iff SINR >= a fixed dB threshold
};

struct UserMetrics {
    double throughput_bps = 0.0;
    double sinr = 0.0;  // operating SINR under the scheme's serving mode
    double airtime = 0.0;
    bool covered = false;
};

}  // namespace compnoma
