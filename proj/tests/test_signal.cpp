#include <cmath>
#include <random>

#include <doctest.h>

#include "fixtures.hpp"

using namespace waveq;
using fixtures::contains;
using fixtures::message_of;

TEST_CASE("time series grid accessors") {
    TimeSeries<double> s;
    s.samples = ArrayX<double>::Zero(12);
    s.dt = 0.5;
    s.t0 = 4.0;
    CHECK_EQ(s.size(), 12);
    CHECK_EQ(s.time(0), 4.0);
    CHECK_EQ(s.time(3), 5.5);
    CHECK_EQ(s.last_time(), 9.5);
    TimeSeries<double> t = s;
    CHECK(s.same_grid(t));
    t.dt = 0.25;
    CHECK_FALSE(s.same_grid(t));
}

TEST_CASE("time series validation") {
    TimeSeries<double> s;
    s.samples = ArrayX<double>::Zero(1);
    s.dt = 0.1;
    CHECK(contains(message_of<DomainError>([&] { s.validate(); }), "size error"));
    s.samples = ArrayX<double>::Zero(8);
    s.dt = 0.0;
    CHECK(contains(message_of<DomainError>([&] { s.validate(); }), "spacing error"));
    s.dt = -0.1;
    CHECK_THROWS_AS(s.validate(), DomainError);
    s.dt = 0.1;
    s.samples[3] = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(s.validate(), DomainError);
}

TEST_CASE("burst synthesis hits its closed form on a grid point") {
    // t = 5.5 sits exactly on the grid; the phase is 10 * 0.5 = 5 and the
    // window exponent is -0.5, both exact in binary
    const TimeSeries<double> s = synth_burst(4.0, 0.5, Index(12), BurstSpec<double>{5.0, 10.0, 0.5, 1.0});
    CHECK_EQ(s.samples[3], std::cos(5.0) * std::exp(-0.5));
    CHECK(s.samples[3] == doctest::Approx(0.172049812484538).epsilon(1e-15));
    CHECK_EQ(s.samples[2], 1.0); // t = 5.0 is the burst center
}

TEST_CASE("burst synthesis stays inside its amplitude") {
    const BurstSpec<double> spec{3.1, 17.0, 0.4, 2.2};
    const TimeSeries<double> s = synth_burst(0.0, 0.01, Index(1000), spec);
    for (Index k = 0; k < s.size(); ++k)
        CHECK(std::abs(s.samples[k]) <= spec.amplitude);
    CHECK(s.samples.abs().maxCoeff() > 2.0); // the center is on a near-peak sample
}

TEST_CASE("burst parameter validation") {
    CHECK_THROWS_AS(synth_burst(0.0, 0.01, Index(64), BurstSpec<double>{1.0, -1.0, 0.5, 1.0}), DomainError);
    CHECK_THROWS_AS(synth_burst(0.0, 0.01, Index(64), BurstSpec<double>{1.0, 0.0, 0.5, 1.0}), DomainError);
    CHECK_THROWS_AS(synth_burst(0.0, 0.01, Index(64), BurstSpec<double>{1.0, 5.0, 0.0, 1.0}), DomainError);
    CHECK_THROWS_AS(synth_burst(0.0, 0.01, Index(64), BurstSpec<double>{1.0, 5.0, -0.2, 1.0}), DomainError);
}

TEST_CASE("superposition is exact and grid-checked") {
    const TimeSeries<double> a = synth_burst(0.0, 0.01, Index(512), BurstSpec<double>{2.0, 8.0, 0.5, 1.0});
    const TimeSeries<double> b = synth_burst(0.0, 0.01, Index(512), BurstSpec<double>{3.0, 20.0, 0.3, 2.2});
    const TimeSeries<double> c = synth_burst(0.0, 0.01, Index(512), BurstSpec<double>{4.0, 8.0, 0.6, 1.0});

    const TimeSeries<double> ab = superpose(a, b);
    const TimeSeries<double> ba = superpose(b, a);
    for (Index k = 0; k < ab.size(); ++k)
        CHECK_EQ(ab.samples[k], ba.samples[k]);

    const TimeSeries<double> abc = superpose(ab, c);
    const TimeSeries<double> acb = superpose(superpose(a, c), b);
    for (Index k = 0; k < abc.size(); ++k)
        CHECK(std::abs(abc.samples[k] - acb.samples[k]) <= 1e-15 * (1.0 + std::abs(abc.samples[k])));

    TimeSeries<double> shifted = a;
    shifted.t0 = 0.5;
    CHECK(contains(message_of<DomainError>([&] { superpose(a, shifted); }), "grid error"));
    TimeSeries<double> shorter = a;
    shorter.samples.conservativeResize(100);
    CHECK_THROWS_AS(superpose(a, shorter), DomainError);
}

TEST_CASE("reconstruction error metric") {
    const TimeSeries<double> f = synth_burst(0.0, 0.01, Index(512), BurstSpec<double>{2.5, 9.0, 0.5, 1.0});

    CHECK_EQ(reconstruction_error(f, f), 0.0);

    TimeSeries<double> zero = f;
    zero.samples.setZero();
    CHECK_EQ(reconstruction_error(f, zero), 1.0);

    TimeSeries<double> twice = f;
    twice.samples *= 2.0;
    CHECK_EQ(reconstruction_error(f, twice), 1.0);

    CHECK(contains(message_of<DomainError>([&] { reconstruction_error(zero, f); }), "undefined-metric"));

    TimeSeries<double> other = f;
    other.t0 = 1.0;
    CHECK(contains(message_of<DomainError>([&] { reconstruction_error(f, other); }), "grid error"));
}
