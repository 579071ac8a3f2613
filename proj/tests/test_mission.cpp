#include "doctest.h"

#include <cmath>
#include <random>
#include <sstream>

#include "powerlife/mission.hpp"

using namespace powerlife;

namespace {
const std::string kDataDir = POWERLIFE_DATA_DIR;
}

TEST_CASE("parse_profile passes samples through") {
    std::istringstream in("time_s,speed_rpm,torque_nm\n0,100,1\n1,200,2\n2,300,3\n");
    MissionProfile p = parse_profile(in, "tiny");
    REQUIRE(p.size() == 3);
    CHECK(p.samples[0].t == 0.0);
    CHECK(p.samples[1].speed == 200.0);
    CHECK(p.samples[2].torque == 3.0);
    CHECK(p.name == "tiny");
}

TEST_CASE("parse_profile rejects bad input with line numbers") {
    SUBCASE("time going backwards") {
        std::istringstream in("time_s,speed_rpm,torque_nm\n0,1,1\n2,1,1\n1,1,1\n");
        CHECK_THROWS_WITH_AS((void)parse_profile(in, "p"),
                             doctest::Contains("p:4"), std::runtime_error);
    }
    SUBCASE("malformed number") {
        std::istringstream in("time_s,speed_rpm,torque_nm\n0,abc,1\n");
        CHECK_THROWS_WITH_AS((void)parse_profile(in, "p"),
                             doctest::Contains("p:2"), std::runtime_error);
    }
    SUBCASE("non-finite value") {
        std::istringstream in("time_s,speed_rpm,torque_nm\n0,inf,1\n");
        CHECK_THROWS_AS((void)parse_profile(in, "p"), std::runtime_error);
    }
    SUBCASE("wrong header") {
        std::istringstream in("t,s,q\n0,1,1\n");
        CHECK_THROWS_AS((void)parse_profile(in, "p"), std::runtime_error);
    }
    SUBCASE("negative speed") {
        std::istringstream in("time_s,speed_rpm,torque_nm\n0,-5,1\n");
        CHECK_THROWS_AS((void)parse_profile(in, "p"), std::runtime_error);
    }
}

TEST_CASE("fixture profiles have the expected sample counts at 1 s spacing") {
    MissionProfile hwfet = parse_profile_file(kDataDir + "/profiles/hwfet.csv", "HWFET");
    CHECK(hwfet.size() == 766);
    CHECK(hwfet.duration() == doctest::Approx(765.0));
    MissionProfile nycc = parse_profile_file(kDataDir + "/profiles/nycc.csv", "NYCC");
    CHECK(nycc.size() == 599);
    for (std::size_t i = 1; i < hwfet.size(); ++i)
        CHECK(hwfet.samples[i].t - hwfet.samples[i - 1].t == doctest::Approx(1.0));
}

TEST_CASE("resample interpolates linearly") {
    MissionProfile p;
    p.samples = {{0, 0, 0}, {2, 2, 2}};
    MissionProfile r = resample(p, 1.0);
    REQUIRE(r.size() == 3);
    CHECK(r.samples[1].t == doctest::Approx(1.0));
    CHECK(r.samples[1].speed == doctest::Approx(1.0));
    CHECK(r.samples[1].torque == doctest::Approx(1.0));
    CHECK(r.dt_native == 1.0);
}

TEST_CASE("resample of a ramp hits the closed-form values") {
    MissionProfile p;
    p.samples = {{0, 0, 0}, {10, 100, 0}};
    MissionProfile r = resample(p, 0.1);
    REQUIRE(r.size() == 101);
    CHECK(r.samples[50].speed == doctest::Approx(50.0));
    CHECK(interpolate(r, 5.05).speed == doctest::Approx(50.5));
}

TEST_CASE("resample keeps a constant profile constant") {
    MissionProfile p;
    p.samples = {{0, 7, 3}, {1, 7, 3}, {5, 7, 3}};
    for (double dt : {0.1, 0.25, 1.0}) {
        MissionProfile r = resample(p, dt);
        for (const auto& s : r.samples) {
            CHECK(s.speed == doctest::Approx(7.0));
            CHECK(s.torque == doctest::Approx(3.0));
        }
    }
}

TEST_CASE("resample is idempotent at the same dt") {
    MissionProfile p;
    p.samples = {{0, 0, 0}, {1.5, 30, 1}, {4, 10, -2}, {7, 80, 0.5}};
    MissionProfile r1 = resample(p, 0.5);
    MissionProfile r2 = resample(r1, 0.5);
    REQUIRE(r1.size() == r2.size());
    for (std::size_t i = 0; i < r1.size(); ++i) {
        CHECK(r2.samples[i].speed == doctest::Approx(r1.samples[i].speed).epsilon(1e-12));
        CHECK(r2.samples[i].torque == doctest::Approx(r1.samples[i].torque).epsilon(1e-12));
    }
}

TEST_CASE("resample rejects dt beyond the duration") {
    MissionProfile p;
    p.samples = {{0, 0, 0}, {2, 2, 2}};
    CHECK_THROWS_AS((void)resample(p, 3.0), std::invalid_argument);
    CHECK_THROWS_AS((void)resample(p, 0.0), std::invalid_argument);
}

TEST_CASE("scale_torque scales torque only") {
    MissionProfile p;
    p.samples = {{0, 100, 3.335}, {1, 200, -1.0}};
    MissionProfile s = scale_torque(p, 0.5);
    CHECK(s.samples[0].torque == doctest::Approx(1.6675));
    CHECK(s.samples[1].torque == doctest::Approx(-0.5));
    CHECK(s.samples[0].speed == 100.0);

    MissionProfile ident = scale_torque(p, 1.0);
    CHECK(ident.samples[0].torque == p.samples[0].torque);
}

TEST_CASE("scale_torque composes multiplicatively") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> q(-3.0, 3.0);
    MissionProfile p;
    for (int i = 0; i < 50; ++i) p.samples.push_back({double(i), 10.0, q(rng)});
    MissionProfile ab = scale_torque(scale_torque(p, 1.7), 0.3);
    MissionProfile prod = scale_torque(p, 1.7 * 0.3);
    for (std::size_t i = 0; i < p.size(); ++i)
        CHECK(ab.samples[i].torque == doctest::Approx(prod.samples[i].torque).epsilon(1e-12));
}

TEST_CASE("classify matches the quadrant definitions") {
    SituationThresholds th{200.0, 1.5};
    CHECK(classify({0, 41.89, 3.367}, th) == SituationClass::LowSpeedHighTorque);
    CHECK(classify({0, 906.68, 0.557}, th) == SituationClass::HighSpeedLowTorque);
    CHECK(classify({0, 41.89, 0.556}, th) == SituationClass::LowSpeedLowTorque);
    CHECK(classify({0, 377.43, 2.714}, th) == SituationClass::HighSpeedHighTorque);
    // negative torque classifies by magnitude
    CHECK(classify({0, 50.0, -2.0}, th) == SituationClass::LowSpeedHighTorque);
}

TEST_CASE("classify assigns boundary samples to the High side") {
    SituationThresholds th{200.0, 1.5};
    CHECK(classify({0, 200.0, 1.5}, th) == SituationClass::HighSpeedHighTorque);
    CHECK(classify({0, 200.0, 0.0}, th) == SituationClass::HighSpeedLowTorque);
    CHECK(classify({0, 0.0, 1.5}, th) == SituationClass::LowSpeedHighTorque);
}

TEST_CASE("classify partitions: every sample lands in exactly one class") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> sp(0.0, 1000.0), q(-4.0, 4.0);
    SituationThresholds th{350.0, 1.2};
    for (int i = 0; i < 2000; ++i) {
        MissionSample s{0.0, sp(rng), q(rng)};
        int idx = static_cast<int>(classify(s, th));
        CHECK(idx >= 0);
        CHECK(idx < 4);
    }
}

TEST_CASE("fixture share statistics separate city from highway") {
    MissionProfile hwfet = parse_profile_file(kDataDir + "/profiles/hwfet.csv", "HWFET");
    MissionProfile nycc = parse_profile_file(kDataDir + "/profiles/nycc.csv", "NYCC");
    SituationShares sh = situation_shares(hwfet, default_thresholds(hwfet));
    SituationShares sn = situation_shares(nycc, default_thresholds(nycc));

    CHECK(sh.of(SituationClass::HighSpeedLowTorque) > sn.of(SituationClass::HighSpeedLowTorque));
    CHECK(sn.of(SituationClass::LowSpeedHighTorque) > sh.of(SituationClass::LowSpeedHighTorque));

    double total = 0.0;
    for (int i = 0; i < 4; ++i) total += sh.shares[i];
    CHECK(total == doctest::Approx(1.0));
}
