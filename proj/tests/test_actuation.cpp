#include <doctest.h>

#include <cmath>

#include "fivebar/actuation.hpp"
#include "fivebar/types.hpp"
#include "oracles.hpp"

using namespace fivebar;

namespace {

const MotorCalibration kM1{4.269, 83.07, +1};
const MotorCalibration kM2{7.710, 153.55, +1};

CycleWaypoints waypoints_deg(double start, double via, double extended) {
    return {deg_to_rad(start), deg_to_rad(via), deg_to_rad(extended), deg_to_rad(via),
            deg_to_rad(start)};
}

} // namespace

TEST_CASE("fitted calibrations reproduce the reference count pairs") {
    CHECK(degrees_to_counts(kM1, 83.07) == 0);
    CHECK(degrees_to_counts(kM1, 35.99) == 201);
    CHECK(degrees_to_counts(kM2, 153.55) == 0);
    CHECK(degrees_to_counts(kM2, 104.39) == 379);
}

TEST_CASE("zero angle maps to zero counts for any calibration") {
    for (const MotorCalibration& cal :
         {kM1, kM2, MotorCalibration{12.5, -30.0, -1}, MotorCalibration{0.31, 7.0, +1}}) {
        CHECK(degrees_to_counts(cal, cal.zero_angle_deg) == 0);
        CHECK(counts_to_degrees(cal, 0) == cal.zero_angle_deg);
    }
}

TEST_CASE("counts decrease the angle monotonically for direction +1") {
    long prev = degrees_to_counts(kM1, 90.0);
    for (double angle = 89.0; angle > 20.0; angle -= 1.0) {
        const long c = degrees_to_counts(kM1, angle);
        CHECK(c >= prev);
        prev = c;
    }
    CHECK(counts_to_degrees(kM1, 201) == doctest::Approx(35.99).epsilon(0.5 / 4.269 / 35.99));
}

TEST_CASE("round trip stays within half a count") {
    testing::UniformDraw draw(90210);
    for (int i = 0; i < 1000; ++i) {
        const double angle = draw.next(-180.0, 180.0);
        for (const MotorCalibration& cal : {kM1, kM2, MotorCalibration{3.7, 12.0, -1}}) {
            const double back = counts_to_degrees(cal, degrees_to_counts(cal, angle));
            CHECK(std::abs(back - angle) <= 0.5 / cal.counts_per_degree + 1e-12);
        }
    }
}

TEST_CASE("schedule_from_plan shares timestamps and matches the table rows") {
    const CycleTiming timing{2.5, 5.0, 7.5, 10.0};
    const PiecewiseQuintic m1 = plan_cycle(waypoints_deg(83.07, 35.99, 40.44), timing);
    const PiecewiseQuintic m2 = plan_cycle(waypoints_deg(153.55, 104.39, 92.37), timing);

    SUBCASE("knot-aligned rate reproduces the reference counts row-pair-wise") {
        const SetpointSchedule sched = schedule_from_plan(m1, m2, kM1, kM2, 0.4);
        REQUIRE(sched.size() == 5);
        CHECK(sched.m1_counts[0] == 0);
        CHECK(sched.m1_counts[1] == 201);
        CHECK(sched.m1_counts[3] == 201);
        CHECK(sched.m1_counts[4] == 0);
        CHECK(sched.m2_counts[0] == 0);
        CHECK(sched.m2_counts[1] == 379);
        CHECK(sched.m2_counts[3] == 379);
        CHECK(sched.m2_counts[4] == 0);
    }
    SUBCASE("doubling the rate keeps common times identical") {
        const SetpointSchedule coarse = schedule_from_plan(m1, m2, kM1, kM2, 1.0);
        const SetpointSchedule fine = schedule_from_plan(m1, m2, kM1, kM2, 2.0);
        CHECK(fine.size() == 2 * coarse.size() - 1);
        for (std::size_t i = 0; i < coarse.size(); ++i) {
            CHECK(fine.t_s[2 * i] == coarse.t_s[i]);
            CHECK(fine.m1_counts[2 * i] == coarse.m1_counts[i]);
            CHECK(fine.m2_counts[2 * i] == coarse.m2_counts[i]);
        }
    }
    SUBCASE("zero-motion plan yields all-zero setpoints") {
        const PiecewiseQuintic still1 = plan_cycle(waypoints_deg(83.07, 83.07, 83.07), timing);
        const PiecewiseQuintic still2 =
            plan_cycle(waypoints_deg(153.55, 153.55, 153.55), timing);
        const SetpointSchedule sched = schedule_from_plan(still1, still2, kM1, kM2, 5.0);
        for (std::size_t i = 0; i < sched.size(); ++i) {
            CHECK(sched.m1_counts[i] == 0);
            CHECK(sched.m2_counts[i] == 0);
        }
    }
    SUBCASE("mismatched durations are rejected") {
        const CycleTiming longer{2.5, 5.0, 7.5, 12.0};
        const PiecewiseQuintic odd = plan_cycle(waypoints_deg(83.07, 35.99, 40.44), longer);
        CHECK_THROWS_AS(schedule_from_plan(m1, odd, kM1, kM2, 1.0), DomainError);
    }
}

TEST_CASE("playback simulation") {
    SUBCASE("lag 0 reproduces the schedule exactly") {
        SetpointSchedule sched;
        for (int i = 0; i < 20; ++i) {
            sched.t_s.push_back(0.1 * i);
            sched.m1_counts.push_back(i * i - 40);
            sched.m2_counts.push_back(-3 * i);
        }
        const SetpointSchedule achieved = simulate_encoder_playback(sched, 0.0);
        CHECK(achieved.m1_counts == sched.m1_counts);
        CHECK(achieved.m2_counts == sched.m2_counts);
        CHECK(achieved.t_s == sched.t_s);
    }
    SUBCASE("constant schedule settles within five time constants") {
        const double tau = 0.2;
        SetpointSchedule sched;
        for (int i = 0; i <= 50; ++i) {
            sched.t_s.push_back(0.05 * i);
            sched.m1_counts.push_back(50);
            sched.m2_counts.push_back(-120);
        }
        const SetpointSchedule achieved = simulate_encoder_playback(sched, tau);
        // by t = 5*tau = 1.0 s the response is within 1 count of the target
        for (std::size_t i = 0; i < sched.size(); ++i) {
            if (sched.t_s[i] >= 5.0 * tau) {
                CHECK(std::abs(achieved.m1_counts[i] - 50) <= 1);
                CHECK(std::abs(achieved.m2_counts[i] + 120) <= 1);
            }
        }
    }
    SUBCASE("step response reaches ~63% after one time constant") {
        const double tau = 0.5;
        SetpointSchedule sched;
        sched.t_s = {0.0, tau, 2.0 * tau};
        sched.m1_counts = {100, 100, 100};
        sched.m2_counts = {0, 0, 0};
        const SetpointSchedule achieved = simulate_encoder_playback(sched, tau);
        CHECK(achieved.m1_counts[0] == 0); // no time has passed yet
        CHECK(std::abs(achieved.m1_counts[1] - 63) <= 1);
        CHECK(std::abs(achieved.m1_counts[2] - 86) <= 1);
    }
    SUBCASE("negative lag is rejected") {
        SetpointSchedule sched;
        sched.t_s = {0.0, 1.0};
        sched.m1_counts = {0, 1};
        sched.m2_counts = {0, 1};
        CHECK_THROWS_AS(simulate_encoder_playback(sched, -0.1), DomainError);
    }
}
