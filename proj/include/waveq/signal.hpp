#pragma once

#include <cmath>
#include <sstream>

#include "waveq/errors.hpp"
#include "waveq/types.hpp"

namespace waveq {

// Uniformly sampled real signal: samples[k] taken at t0 + k dt.
template <typename Scalar>
struct TimeSeries {
    ArrayX<Scalar> samples;
    Scalar dt = Scalar(0);
    Scalar t0 = Scalar(0);

    Index size() const { return samples.size(); }
    Scalar time(Index k) const { return t0 + dt * Scalar(k); }
    Scalar last_time() const { return time(size() - 1); }

    bool same_grid(const TimeSeries& other) const {
        return t0 == other.t0 && dt == other.dt && size() == other.size();
    }

    void validate() const {
        if (samples.size() < 2)
            throw DomainError("size error: time series needs at least 2 samples");
        if (!std::isfinite(dt) || !(dt > Scalar(0)))
            throw DomainError("spacing error: sample spacing must be finite and positive");
        if (!std::isfinite(t0))
            throw DomainError("domain error: start time must be finite");
        if (!samples.allFinite())
            throw DomainError("domain error: samples must be finite");
    }
};

// One Gaussian-windowed cosine burst.
template <typename Scalar>
struct BurstSpec {
    Scalar center = Scalar(0);
    Scalar frequency = Scalar(0);
    Scalar width = Scalar(0);
    Scalar amplitude = Scalar(1);

    void validate() const {
        if (!std::isfinite(center) || !std::isfinite(frequency) || !std::isfinite(width) ||
            !std::isfinite(amplitude))
            throw DomainError("domain error: burst parameters must be finite");
        if (!(frequency > Scalar(0)))
            throw DomainError("domain error: burst frequency must be positive");
        if (!(width > Scalar(0)))
            throw DomainError("domain error: burst width must be positive");
    }
};

// samples[k] = A cos(omega0 (t_k - t_c)) exp(-(t_k - t_c)^2 / (2 sigma^2))
template <typename Scalar>
TimeSeries<Scalar> synth_burst(Scalar t0, Scalar dt, Index n, const BurstSpec<Scalar>& spec) {
    spec.validate();
    TimeSeries<Scalar> out;
    out.t0 = t0;
    out.dt = dt;
    out.samples.resize(n);
    for (Index k = 0; k < n; ++k) {
        const Scalar u = out.time(k) - spec.center;
        out.samples[k] = spec.amplitude * std::cos(spec.frequency * u) *
                         std::exp(-(u * u) / (Scalar(2) * spec.width * spec.width));
    }
    out.validate();
    return out;
}

template <typename Scalar>
TimeSeries<Scalar> superpose(const TimeSeries<Scalar>& a, const TimeSeries<Scalar>& b) {
    a.validate();
    b.validate();
    if (!a.same_grid(b))
        throw DomainError("grid error: cannot superpose series on different sample grids");
    TimeSeries<Scalar> out = a;
    out.samples += b.samples;
    return out;
}

// Relative L2 distance ||recon - original|| / ||original|| on a shared grid.
template <typename Scalar>
Scalar reconstruction_error(const TimeSeries<Scalar>& original, const TimeSeries<Scalar>& recon) {
    original.validate();
    recon.validate();
    if (!original.same_grid(recon))
        throw DomainError("grid error: reconstruction error needs both series on one grid");
    const Scalar denom = original.samples.matrix().norm();
    if (denom == Scalar(0))
        throw DomainError("undefined-metric error: reconstruction error of the zero signal is undefined");
    return (recon.samples - original.samples).matrix().norm() / denom;
}

} // namespace waveq
