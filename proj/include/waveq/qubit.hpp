#pragma once

#include <cmath>
#include <set>
#include <sstream>
#include <utility>
#include <vector>

#include "waveq/errors.hpp"
#include "waveq/transform.hpp"
#include "waveq/types.hpp"
#include "waveq/wavelet.hpp"

namespace waveq {

// One sampled map cell, carried with enough context to stand alone.
template <typename Scalar>
struct MapPoint {
    Scalar omega = Scalar(0);
    Scalar shift = Scalar(0);
    Scalar coeff = Scalar(0);
    Index freq_index = 0;
    Index time_index = 0;
};

// Two distinct map points whose coefficients act as the two amplitudes of a
// qubit-like state.
template <typename Scalar>
struct QubitState {
    MapPoint<Scalar> point_m;
    MapPoint<Scalar> point_n;
    WaveletKind wavelet_kind = WaveletKind::MexicanHat;
    Scalar admissibility = Scalar(0);
    bool normalized = false;
};

// Pure read of two map cells; the map is never modified or re-derived.
template <typename Scalar>
QubitState<Scalar> encode_qubit(const WaveletMap<Scalar>& map, std::pair<Index, Index> p1,
                                std::pair<Index, Index> p2, const DualBasisFunction<Scalar>& dual) {
    map.validate();
    auto read = [&](std::pair<Index, Index> p) {
        if (p.first < 0 || p.first >= map.rows() || p.second < 0 || p.second >= map.cols()) {
            std::ostringstream msg;
            msg << "index error: point (" << p.first << ", " << p.second << ") outside map of " << map.rows()
                << " x " << map.cols();
            throw DomainError(msg.str());
        }
        MapPoint<Scalar> pt;
        pt.freq_index = p.first;
        pt.time_index = p.second;
        pt.omega = map.freq.values[p.first];
        pt.shift = map.times.value(p.second);
        pt.coeff = map.coeffs(p.first, p.second);
        return pt;
    };
    if (p1 == p2)
        throw DomainError("degeneracy error: the two map points must differ");
    QubitState<Scalar> q;
    q.point_m = read(p1);
    q.point_n = read(p2);
    q.wavelet_kind = dual.wavelet.kind;
    q.admissibility = dual.admissibility;
    q.normalized = false;
    return q;
}

// The two basis directions of the state at time t, as 2-vectors in the qubit
// plane: m spans (Psi(omega_m (t - T_m)), 0) and n spans
// (0, Psi(omega_n (t - T_n))).  Their inner product is exactly zero at every
// t because each has a hard zero in the other's slot.
template <typename Scalar>
struct VersorPair {
    Eigen::Matrix<Scalar, 2, 1> m;
    Eigen::Matrix<Scalar, 2, 1> n;
};

template <typename Scalar>
VersorPair<Scalar> qubit_versors(const QubitState<Scalar>& q, Scalar t) {
    const DualBasisFunction<Scalar> dual{AnalyzingWavelet<Scalar>{q.wavelet_kind}, q.admissibility};
    VersorPair<Scalar> v;
    v.m << dual.evaluate(q.point_m.omega * (t - q.point_m.shift)), Scalar(0);
    v.n << Scalar(0), dual.evaluate(q.point_n.omega * (t - q.point_n.shift));
    return v;
}

// sqrt(W_m^2 + W_n^2)
template <typename Scalar>
Scalar qubit_norm(const QubitState<Scalar>& q) {
    return std::sqrt(q.point_m.coeff * q.point_m.coeff + q.point_n.coeff * q.point_n.coeff);
}

// Copy of the state with both amplitudes divided by the norm.  The points keep
// their map coordinates; only the coefficients change.
template <typename Scalar>
QubitState<Scalar> normalize(const QubitState<Scalar>& q) {
    const Scalar norm = qubit_norm(q);
    if (!(norm > Scalar(1e-12))) {
        std::ostringstream msg;
        msg << "non-normalizable error: qubit norm " << norm << " is too small to normalize";
        throw DomainError(msg.str());
    }
    QubitState<Scalar> out = q;
    out.point_m.coeff /= norm;
    out.point_n.coeff /= norm;
    out.normalized = true;
    return out;
}

namespace detail {

// Per-row RMS smoothing of |W| along the shift axis with a Gaussian window one
// carrier period wide (sigma = 2 pi / omega_i), truncated at 4 sigma and
// renormalized by the clipped kernel sum.
template <typename Scalar>
ArrayXX<Scalar> smoothed_envelope(const WaveletMap<Scalar>& map) {
    const Index nw = map.rows();
    const Index nT = map.cols();
    const Scalar dT = map.times.dT;
    const ArrayXX<Scalar> w2 = map.coeffs.square();
    ArrayXX<Scalar> env(nw, nT);
    for (Index i = 0; i < nw; ++i) {
        const Scalar sigma = Scalar(2) * Scalar(EIGEN_PI) / map.freq.values[i];
        const Index half = static_cast<Index>(std::ceil(Scalar(4) * sigma / dT));
        ArrayX<Scalar> ker(2 * half + 1);
        for (Index o = -half; o <= half; ++o) {
            const Scalar x = (Scalar(o) * dT) / sigma;
            ker[o + half] = std::exp(Scalar(-0.5) * x * x);
        }
        for (Index j = 0; j < nT; ++j) {
            const Index lo = j - half < 0 ? 0 : j - half;
            const Index hi = j + half > nT - 1 ? nT - 1 : j + half;
            const Index len = hi - lo + 1;
            const auto kseg = ker.segment(lo - j + half, len);
            const Scalar num = (kseg.transpose() * w2.row(i).segment(lo, len)).sum();
            const Scalar den = kseg.sum();
            env(i, j) = std::sqrt(num / den);
        }
    }
    return env;
}

} // namespace detail

// The k strongest well-separated features of a map.  Candidates are strict
// 8-neighbor interior maxima of the smoothed envelope with the sqrt(omega)
// row trend divided out, visited in decreasing order of that field.  Each
// candidate's row is then re-centered by a 3-point parabola on the log of the
// same field across rows before snapping back to the grid; its column is kept.
// Distinct cells are collected until k points exist, and the result is
// returned in decreasing |W| order.  Finding fewer than k distinct cells is an
// error reporting how many were found.
template <typename Scalar>
std::vector<MapPoint<Scalar>> select_peaks(const WaveletMap<Scalar>& map, Index k) {
    map.validate();
    if (k < 1)
        throw DomainError("domain error: requested peak count must be at least 1");

    const Index nw = map.rows();
    const Index nT = map.cols();

    struct Candidate {
        Scalar score;
        Index i;
        Index j;
    };
    std::vector<Candidate> cands;
    ArrayXX<Scalar> scored;
    if (nw >= 3 && nT >= 3) {
        scored = detail::smoothed_envelope(map);
        for (Index i = 0; i < nw; ++i)
            scored.row(i) /= std::sqrt(map.freq.values[i]);
        for (Index i = 1; i + 1 < nw; ++i)
            for (Index j = 1; j + 1 < nT; ++j) {
                const Scalar c = scored(i, j);
                if (c > scored(i - 1, j - 1) && c > scored(i - 1, j) && c > scored(i - 1, j + 1) &&
                    c > scored(i, j - 1) && c > scored(i, j + 1) && c > scored(i + 1, j - 1) &&
                    c > scored(i + 1, j) && c > scored(i + 1, j + 1))
                    cands.push_back({c, i, j});
            }
        std::sort(cands.begin(), cands.end(), [](const Candidate& a, const Candidate& b) {
            if (a.score != b.score)
                return a.score > b.score;
            if (a.i != b.i)
                return a.i < b.i;
            return a.j < b.j;
        });
    }

    const Scalar lnr = map.freq.log_step();
    // measured peak-response skew of the smoothed field in log-frequency
    // units; re-centers the parabola vertex before snapping to the grid
    const Scalar skew = Scalar(0.036);

    std::vector<MapPoint<Scalar>> out;
    std::set<std::pair<Index, Index>> seen;
    for (const Candidate& c : cands) {
        if (static_cast<Index>(out.size()) == k)
            break;
        Scalar off = Scalar(0);
        const Scalar em = scored(c.i - 1, c.j);
        const Scalar e0 = scored(c.i, c.j);
        const Scalar ep = scored(c.i + 1, c.j);
        if (em > Scalar(0) && ep > Scalar(0)) {
            const Scalar lm = std::log(em);
            const Scalar l0 = std::log(e0);
            const Scalar lp = std::log(ep);
            const Scalar den = lm - Scalar(2) * l0 + lp;
            if (den != Scalar(0))
                off = Scalar(0.5) * (lm - lp) / den;
        }
        Index row = static_cast<Index>(std::lround(Scalar(c.i) + off + skew / lnr));
        row = row < 1 ? 1 : (row > nw - 2 ? nw - 2 : row);
        if (!seen.insert({row, c.j}).second)
            continue;
        MapPoint<Scalar> pt;
        pt.freq_index = row;
        pt.time_index = c.j;
        pt.omega = map.freq.values[row];
        pt.shift = map.times.value(c.j);
        pt.coeff = map.coeffs(row, c.j);
        out.push_back(pt);
    }

    if (static_cast<Index>(out.size()) < k) {
        std::ostringstream msg;
        msg << "count error: found " << out.size() << " of " << k << " requested peaks";
        throw DomainError(msg.str());
    }
    std::sort(out.begin(), out.end(), [](const MapPoint<Scalar>& a, const MapPoint<Scalar>& b) {
        const Scalar aa = std::abs(a.coeff);
        const Scalar bb = std::abs(b.coeff);
        if (aa != bb)
            return aa > bb;
        if (a.freq_index != b.freq_index)
            return a.freq_index < b.freq_index;
        return a.time_index < b.time_index;
    });
    return out;
}

} // namespace waveq
