#pragma once

#include <cmath>
#include <sstream>
#include <utility>

#include "waveq/errors.hpp"
#include "waveq/grid.hpp"
#include "waveq/signal.hpp"
#include "waveq/types.hpp"
#include "waveq/wavelet.hpp"

namespace waveq {

// Dense coefficient map: row i holds the response at labeled frequency
// freq.values[i] across shifts times.value(j).
template <typename Scalar>
struct WaveletMap {
    FrequencyGrid<Scalar> freq;
    ShiftGrid<Scalar> times;
    ArrayXX<Scalar> coeffs;

    Index rows() const { return coeffs.rows(); }
    Index cols() const { return coeffs.cols(); }

    void validate() const {
        freq.validate();
        times.validate();
        if (coeffs.rows() != freq.count() || coeffs.cols() != times.count)
            throw DomainError("domain error: map shape does not match its grids");
        if (!coeffs.allFinite())
            throw DomainError("domain error: map coefficients must be finite");
    }
};

// Shift axis sampled every `stride` signal samples, extended so the last shift
// reaches or passes the last sample.
template <typename Scalar>
ShiftGrid<Scalar> stride_grid(const TimeSeries<Scalar>& series, Index stride) {
    if (stride < 1)
        throw DomainError("domain error: stride must be at least 1");
    series.validate();
    ShiftGrid<Scalar> grid;
    grid.t0 = series.t0;
    grid.dT = series.dt * Scalar(stride);
    grid.count = (series.size() - 1 + stride - 1) / stride + 1;
    return grid;
}

namespace detail {

// Index range of the grid t0 + k dt, 0 <= k < n, covering [lo, hi]; widened by
// one sample on each side before clamping.  Empty ranges come back as {1, 0}.
template <typename Scalar>
std::pair<Index, Index> sample_window(Scalar lo, Scalar hi, Scalar t0, Scalar dt, Index n) {
    const Scalar a = std::floor((lo - t0) / dt) - Scalar(1);
    const Scalar b = std::ceil((hi - t0) / dt) + Scalar(1);
    if (b < Scalar(0) || a > Scalar(n - 1))
        return {Index(1), Index(0)};
    const Index k0 = a < Scalar(0) ? Index(0) : static_cast<Index>(a);
    const Index k1 = b > Scalar(n - 1) ? n - 1 : static_cast<Index>(b);
    return {k0, k1};
}

} // namespace detail

// W[i, j] = sqrt(nu_i) sum_k f_k w_k g(nu_i (t_k - T_j)) with trapezoid
// weights w_k = dt halved at the two ends, where nu_i is the labeled row
// frequency divided by the response peak ratio.  Terms with
// |nu_i (t_k - T_j)| > support_radius are dropped.  Summation over k runs in
// ascending order within every (i, j) cell, so a given input always produces
// bitwise-identical coefficients.
template <typename Scalar>
WaveletMap<Scalar> forward_cwt(const TimeSeries<Scalar>& f, const AnalyzingWavelet<Scalar>& wavelet,
                               const FrequencyGrid<Scalar>& freq, const ShiftGrid<Scalar>& times) {
    f.validate();
    freq.validate();
    times.validate();

    const Index n = f.size();
    const Index nw = freq.count();
    const Index nT = times.count;
    const Scalar ratio = wavelet.response_peak_ratio();
    const Scalar radius = wavelet.support_radius;

    ArrayX<Scalar> t(n);
    for (Index k = 0; k < n; ++k)
        t[k] = f.time(k);
    ArrayX<Scalar> fw = f.samples * f.dt;
    fw[0] *= Scalar(0.5);
    fw[n - 1] *= Scalar(0.5);

    WaveletMap<Scalar> map;
    map.freq = freq;
    map.times = times;
    map.coeffs.setZero(nw, nT);

    for (Index i = 0; i < nw; ++i) {
        const Scalar nu = freq.values[i] / ratio;
        const Scalar halfwin = radius / nu;
        const Scalar root = std::sqrt(nu);
        for (Index j = 0; j < nT; ++j) {
            const Scalar T = times.value(j);
            const auto [k0, k1] = detail::sample_window(T - halfwin, T + halfwin, f.t0, f.dt, n);
            if (k0 > k1)
                continue;
            const Index len = k1 - k0 + 1;
            const ArrayX<Scalar> z = nu * (t.segment(k0, len) - T);
            const Scalar s =
                ((z.abs() <= radius).select(fw.segment(k0, len) * wavelet.evaluate(z), Scalar(0))).sum();
            map.coeffs(i, j) = root * s;
        }
    }
    map.validate();
    return map;
}

template <typename Scalar>
struct MapExtremum {
    Index row = 0;
    Index col = 0;
    Scalar value = Scalar(0);
};

// Location of the largest |W|; earliest (row, col) in row-major order on ties.
template <typename Scalar>
MapExtremum<Scalar> map_argmax(const WaveletMap<Scalar>& map) {
    map.validate();
    MapExtremum<Scalar> best;
    best.value = std::abs(map.coeffs(0, 0));
    for (Index i = 0; i < map.rows(); ++i)
        for (Index j = 0; j < map.cols(); ++j) {
            const Scalar a = std::abs(map.coeffs(i, j));
            if (a > best.value) {
                best.row = i;
                best.col = j;
                best.value = a;
            }
        }
    best.value = map.coeffs(best.row, best.col);
    return best;
}

namespace detail {

// Open-cell widths for the log-frequency quadrature: interior rows get
// nu_i log r, the two boundary rows get zero weight (their cells are open on
// one side).
template <typename Scalar>
ArrayX<Scalar> log_cell_widths(const ArrayX<Scalar>& nus, Scalar log_ratio) {
    ArrayX<Scalar> widths = ArrayX<Scalar>::Zero(nus.size());
    for (Index i = 1; i + 1 < nus.size(); ++i)
        widths[i] = nus[i] * log_ratio;
    return widths;
}

} // namespace detail

// f_hat(t) = sum_i dnu_i nu_i^e sum_j W[i, j] g(nu_i (t - T_j)) / C_g dT
// with dnu_i the open-cell widths above and e the frequency weight exponent.
// The boundary rows carry zero quadrature weight, so at least 3 frequency rows
// are required.  The output grid must stay inside the map's shift extent.
template <typename Scalar>
TimeSeries<Scalar> reconstruct(const WaveletMap<Scalar>& map, const DualBasisFunction<Scalar>& dual,
                               Scalar out_t0, Scalar out_dt, Index out_n,
                               Scalar weight_exponent = Scalar(0.5)) {
    map.validate();
    if (map.rows() < 3)
        throw DomainError("domain error: reconstruction needs at least 3 frequency rows");
    if (out_n < 2)
        throw DomainError("size error: output grid needs at least 2 samples");
    if (!std::isfinite(out_dt) || !(out_dt > Scalar(0)))
        throw DomainError("spacing error: output spacing must be finite and positive");

    const Scalar out_last = out_t0 + out_dt * Scalar(out_n - 1);
    if (out_t0 < map.times.t0 || out_last > map.times.last()) {
        std::ostringstream msg;
        msg << "extent error: output grid [" << out_t0 << ", " << out_last << "] reaches outside the map's shift"
            << " range [" << map.times.t0 << ", " << map.times.last() << "]";
        throw ExtentError(msg.str());
    }

    const Scalar ratio = dual.wavelet.response_peak_ratio();
    const Scalar radius = dual.wavelet.support_radius;
    const Scalar cg = dual.admissibility;
    const ArrayX<Scalar> nus = map.freq.values / ratio;
    const ArrayX<Scalar> dnu = detail::log_cell_widths(nus, map.freq.log_step());
    const Scalar dT = map.times.dT;

    ArrayX<Scalar> t(out_n);
    for (Index k = 0; k < out_n; ++k)
        t[k] = out_t0 + out_dt * Scalar(k);

    TimeSeries<Scalar> out;
    out.t0 = out_t0;
    out.dt = out_dt;
    out.samples = ArrayX<Scalar>::Zero(out_n);

    for (Index i = 1; i + 1 < map.rows(); ++i) {
        const Scalar nu = nus[i];
        const Scalar halfwin = radius / nu;
        const Scalar row_weight = std::pow(nu, weight_exponent) * dnu[i] * dT;
        for (Index j = 0; j < map.cols(); ++j) {
            const Scalar w = map.coeffs(i, j);
            if (w == Scalar(0))
                continue;
            const Scalar T = map.times.value(j);
            const auto [k0, k1] = detail::sample_window(T - halfwin, T + halfwin, out_t0, out_dt, out_n);
            if (k0 > k1)
                continue;
            const Index len = k1 - k0 + 1;
            const ArrayX<Scalar> z = nu * (t.segment(k0, len) - T);
            out.samples.segment(k0, len) +=
                (z.abs() <= radius)
                    .select(row_weight * w / cg * dual.wavelet.evaluate(z), Scalar(0));
        }
    }
    return out;
}

// K(t, t') = sum_i dnu_i nu_i^p / C_g sum_j g(nu_i (t - T_j)) g(nu_i (t' - T_j)) dT
// on the same open-cell quadrature as reconstruct.  Exactly symmetric in its
// two time arguments, and zero when either lies outside every window.
template <typename Scalar>
Scalar delta_kernel(const AnalyzingWavelet<Scalar>& wavelet, const DualBasisFunction<Scalar>& dual,
                    Scalar t, Scalar t_prime, const FrequencyGrid<Scalar>& freq,
                    const ShiftGrid<Scalar>& times, Scalar weight_exponent = Scalar(1)) {
    freq.validate();
    times.validate();
    if (freq.count() < 3)
        throw DomainError("domain error: kernel quadrature needs at least 3 frequency rows");
    if (!std::isfinite(t) || !std::isfinite(t_prime))
        throw DomainError("domain error: kernel arguments must be finite");

    const Scalar ratio = wavelet.response_peak_ratio();
    const Scalar radius = wavelet.support_radius;
    const Scalar cg = dual.admissibility;
    const ArrayX<Scalar> nus = freq.values / ratio;
    const ArrayX<Scalar> dnu = detail::log_cell_widths(nus, freq.log_step());
    const Scalar dT = times.dT;

    const Scalar lo = std::min(t, t_prime);
    const Scalar hi = std::max(t, t_prime);

    Scalar acc = Scalar(0);
    for (Index i = 1; i + 1 < freq.count(); ++i) {
        const Scalar nu = nus[i];
        const Scalar halfwin = radius / nu;
        // a shift contributes only if it sits within halfwin of both times
        const auto [j0, j1] = detail::sample_window(hi - halfwin, lo + halfwin, times.t0, times.dT, times.count);
        if (j0 > j1)
            continue;
        const Index len = j1 - j0 + 1;
        ArrayX<Scalar> T(len);
        for (Index j = 0; j < len; ++j)
            T[j] = times.value(j0 + j);
        const ArrayX<Scalar> z1 = nu * (t - T);
        const ArrayX<Scalar> z2 = nu * (t_prime - T);
        const Scalar s = ((z1.abs() <= radius && z2.abs() <= radius)
                              .select(wavelet.evaluate(z1) * wavelet.evaluate(z2), Scalar(0)))
                             .sum();
        acc += std::pow(nu, weight_exponent) / cg * dnu[i] * s * dT;
    }
    return acc;
}

} // namespace waveq
