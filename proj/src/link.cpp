#include "compnoma/link.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "compnoma/common.hpp"

namespace compnoma {

McsTable::McsTable(std::vector<McsRow> rows) : rows_(std::move(rows)) {
    if (rows_.empty()) throw std::invalid_argument("MCS table has no rows");
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        if (!std::isfinite(rows_[i].min_sinr_db) || !std::isfinite(rows_[i].efficiency) || rows_[i].efficiency <= 0.0)
            throw std::invalid_argument("MCS row " + std::to_string(i + 1) + " is not a finite positive entry");
        if (i > 0 && !(rows_[i].min_sinr_db > rows_[i - 1].min_sinr_db))
            throw std::invalid_argument("MCS thresholds must be strictly increasing (row " + std::to_string(i + 1) +
                                        ")");
        if (i > 0 && !(rows_[i].efficiency > rows_[i - 1].efficiency))
            throw std::invalid_argument("MCS efficiencies must be strictly increasing (row " +
                                        std::to_string(i + 1) + ")");
    }
}

McsTable McsTable::parse(std::string_view text) {
    std::vector<McsRow> rows;
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream fields(line);
        McsRow row;
        if (!(fields >> row.min_sinr_db)) {
            if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
            throw std::invalid_argument("MCS table line " + std::to_string(line_no) + ": expected two numbers");
        }
        std::string extra;
        if (!(fields >> row.efficiency) || (fields >> extra))
            throw std::invalid_argument("MCS table line " + std::to_string(line_no) + ": expected two numbers");
        rows.push_back(row);
    }
    return McsTable(std::move(rows));
}

McsTable McsTable::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open MCS table " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    return parse(buf.str());
}

const McsTable& McsTable::default_table() {
    // Same values as data/mcs_default.txt.
    static const McsTable table({
        {-6.7, 0.1523}, {-4.7, 0.2344}, {-2.3, 0.3770}, {0.2, 0.6016},  {2.4, 0.8770},
        {4.3, 1.1758},  {5.9, 1.4766},  {8.1, 1.9141},  {10.3, 2.4063}, {11.7, 2.7305},
        {14.1, 3.3223}, {16.3, 3.9023}, {18.7, 4.5234}, {21.0, 5.1152}, {22.7, 5.5547},
    });
    return table;
}

double McsTable::efficiency(double sinr_linear) const {
    if (!(sinr_linear > 0.0)) return 0.0;
    const double db = linear_to_db(sinr_linear);
    auto it = std::upper_bound(rows_.begin(), rows_.end(), db,
                               [](double v, const McsRow& r) { return v < r.min_sinr_db; });
    if (it == rows_.begin()) return 0.0;
    return std::prev(it)->efficiency;
}

void FrameParams::validate() const {
    if (!(subcarriers > 0.0)) throw ConfigError("subcarriers per subchannel must be positive", "link.subcarriers");
    if (!(symbols > 0.0)) throw ConfigError("symbols per subframe must be positive", "link.symbols");
    if (!(subframe_s > 0.0)) throw ConfigError("subframe duration must be positive", "link.subframe_s");
    if (subchannels == 0) throw ConfigError("subchannel count must be at least 1", "radio.subchannels");
}

double link_rate(double sinr_linear, const FrameParams& frame, const McsTable& table) {
    return table.efficiency(sinr_linear) * frame.subcarriers * frame.symbols / frame.subframe_s *
           static_cast<double>(frame.subchannels);
}

}  // namespace compnoma
