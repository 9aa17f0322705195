#pragma once

#include <cmath>
#include <sstream>

#include "waveq/errors.hpp"
#include "waveq/types.hpp"

namespace waveq {

// Logarithmically spaced frequency axis of a map, ascending and positive.
template <typename Scalar>
struct FrequencyGrid {
    ArrayX<Scalar> values;

    Index count() const { return values.size(); }

    // log of the constant ratio between adjacent rows
    Scalar log_step() const { return std::log(values[1] / values[0]); }

    void validate() const {
        if (values.size() < 2)
            throw DomainError("domain error: frequency grid needs at least 2 rows");
        for (Index i = 0; i < values.size(); ++i)
            if (!std::isfinite(values[i]) || !(values[i] > Scalar(0)))
                throw DomainError("domain error: frequency grid values must be finite and positive");
        const Scalar step = log_step();
        if (!(step > Scalar(0)))
            throw DomainError("domain error: frequency grid must be strictly ascending");
        for (Index i = 0; i + 1 < values.size(); ++i) {
            const Scalar local = std::log(values[i + 1] / values[i]);
            if (std::abs(local - step) > Scalar(1e-10) * step) {
                std::ostringstream msg;
                msg << "domain error: frequency grid is not logarithmically spaced near row " << i;
                throw DomainError(msg.str());
            }
        }
    }

    static FrequencyGrid log_band(Scalar lo, Scalar hi, Index count) {
        if (!(lo > Scalar(0)) || !(hi > lo))
            throw DomainError("domain error: frequency band needs 0 < lo < hi");
        if (count < 2)
            throw DomainError("domain error: frequency band needs at least 2 rows");
        const Scalar a = std::log(lo);
        const Scalar b = std::log(hi);
        const Scalar step = (b - a) / Scalar(count - 1);
        FrequencyGrid grid;
        grid.values.resize(count);
        for (Index k = 0; k < count; ++k)
            grid.values[k] = std::exp(a + step * Scalar(k));
        grid.values[count - 1] = std::exp(b);
        return grid;
    }
};

// Uniform shift axis of a map: T_j = t0 + j dT.
template <typename Scalar>
struct ShiftGrid {
    Scalar t0 = Scalar(0);
    Scalar dT = Scalar(0);
    Index count = 0;

    Scalar value(Index j) const { return t0 + dT * Scalar(j); }
    Scalar last() const { return value(count - 1); }

    ArrayX<Scalar> values() const {
        ArrayX<Scalar> out(count);
        for (Index j = 0; j < count; ++j)
            out[j] = value(j);
        return out;
    }

    void validate() const {
        if (count < 1)
            throw DomainError("domain error: shift grid needs at least 1 column");
        if (!std::isfinite(t0) || !std::isfinite(dT) || !(dT > Scalar(0)))
            throw DomainError("domain error: shift grid spacing must be finite and positive");
    }
};

} // namespace waveq
