#include <cmath>
#include <stdexcept>

#include "compnoma/common.hpp"
#include "compnoma/link.hpp"
#include "compnoma/rng.hpp"
#include "doctest.h"

using namespace compnoma;

namespace {

// Linear scan: the last row whose threshold does not exceed the SINR.
double scan_efficiency(const McsTable& t, double sinr_db) {
    double eta = 0.0;
    for (const auto& r : t.rows())
        if (sinr_db >= r.min_sinr_db) eta = r.efficiency;
    return eta;
}

}  // namespace

TEST_CASE("default table shape") {
    const auto& t = McsTable::default_table();
    REQUIRE(t.rows().size() == 15);
    CHECK(t.rows().front().min_sinr_db == -6.7);
    CHECK(t.rows().front().efficiency == 0.1523);
    CHECK(t.rows().back().min_sinr_db == 22.7);
    CHECK(t.rows().back().efficiency == 5.5547);
}

TEST_CASE("efficiency lookup edges") {
    const auto& t = McsTable::default_table();
    CHECK(t.efficiency(0.0) == 0.0);
    CHECK(t.efficiency(db_to_linear(-20.0)) == 0.0);
    CHECK(t.efficiency(db_to_linear(-6.7 - 1e-9)) == 0.0);
    CHECK(t.efficiency(db_to_linear(-6.7 + 1e-9)) == 0.1523);
    CHECK(t.efficiency(db_to_linear(25.0)) == 5.5547);
    CHECK(t.efficiency(INFINITY) == 5.5547);

    // Thresholds are closed from below: exactly 0 dB selects the 0 dB row.
    const McsTable z({{-3.0, 0.5}, {0.0, 1.0}, {3.0, 2.0}});
    CHECK(z.efficiency(1.0) == 1.0);
}

TEST_CASE("lookup agrees with a linear scan on random SINRs") {
    const auto& t = McsTable::default_table();
    Rng rng(5);
    std::uniform_real_distribution<double> db(-15.0, 30.0);
    for (int i = 0; i < 100000; ++i) {
        const double lin = db_to_linear(db(rng));
        if (t.efficiency(lin) != scan_efficiency(t, linear_to_db(lin))) {
            FAIL("mismatch at " << linear_to_db(lin) << " dB");
        }
    }
}

TEST_CASE("link rate") {
    const McsTable unit({{0.0, 1.0}});
    const FrameParams f;
    // 1 bit/symbol * 12 * 14 * 100 per millisecond.
    CHECK(link_rate(1.0, f, unit) == doctest::Approx(16.8e6));
    CHECK(link_rate(0.5, f, unit) == 0.0);

    FrameParams doubled = f;
    doubled.subchannels = 200;
    CHECK(link_rate(1.0, doubled, unit) == doctest::Approx(2.0 * link_rate(1.0, f, unit)));
    CHECK(user_throughput(16.8e6, 0.25) == doctest::Approx(4.2e6));
}

TEST_CASE("table file matches the built-in default") {
    const auto loaded = McsTable::load(COMPNOMA_DATA_DIR "/mcs_default.txt");
    const auto& def = McsTable::default_table();
    REQUIRE(loaded.rows().size() == def.rows().size());
    for (std::size_t i = 0; i < def.rows().size(); ++i) {
        CHECK(loaded.rows()[i].min_sinr_db == def.rows()[i].min_sinr_db);
        CHECK(loaded.rows()[i].efficiency == def.rows()[i].efficiency);
    }
}

TEST_CASE("malformed tables are rejected") {
    CHECK_THROWS_AS(McsTable(std::vector<McsRow>{}), std::invalid_argument);
    CHECK_THROWS_AS(McsTable::parse("# only a comment\n"), std::invalid_argument);
    CHECK_THROWS_AS(McsTable::parse("0 1\n-1 2\n"), std::invalid_argument);
    CHECK_THROWS_AS(McsTable::parse("0 1\n1 0.5\n"), std::invalid_argument);
    CHECK_THROWS_AS(McsTable::parse("0 1 2\n"), std::invalid_argument);
    CHECK_THROWS_AS(McsTable::parse("0\n"), std::invalid_argument);
    CHECK_THROWS_AS(McsTable::parse("0 -1\n"), std::invalid_argument);
    CHECK_THROWS(McsTable::load("/nonexistent/table.txt"));
}

TEST_CASE("frame parameters are validated") {
    FrameParams f;
    CHECK_NOTHROW(f.validate());
    f.symbols = 0.0;
    CHECK_THROWS_AS(f.validate(), ConfigError);
}
