#pragma once

#include <cmath>
#include <sstream>
#include <string>

#include <Eigen/Dense>

#include "waveq/errors.hpp"
#include "waveq/types.hpp"

namespace waveq {

enum class WaveletKind {
    MexicanHat,
};

inline std::string wavelet_kind_name(WaveletKind kind) {
    switch (kind) {
    case WaveletKind::MexicanHat:
        return "mexican-hat";
    }
    throw DomainError("domain error: unknown wavelet kind");
}

inline WaveletKind wavelet_kind_from_name(const std::string& name) {
    if (name == "mexican-hat")
        return WaveletKind::MexicanHat;
    throw ParseError("parse error: unknown wavelet kind '" + name + "'");
}

// Analyzing wavelet g evaluated in the dimensionless argument z.  The member
// functions below are total on the reals; truncation to |z| <= support_radius
// is the caller's job and support_radius is the authoritative cutoff.
template <typename Scalar>
struct AnalyzingWavelet {
    WaveletKind kind = WaveletKind::MexicanHat;
    Scalar support_radius = Scalar(8);

    // g(z) = (1 - z^2) exp(-z^2/2)
    Scalar evaluate(Scalar z) const {
        switch (kind) {
        case WaveletKind::MexicanHat: {
            const Scalar z2 = z * z;
            return (Scalar(1) - z2) * std::exp(Scalar(-0.5) * z2);
        }
        }
        throw DomainError("domain error: unknown wavelet kind");
    }

    // Vectorized g over an Eigen array expression.
    template <typename Derived>
    auto evaluate(const Eigen::ArrayBase<Derived>& z) const {
        switch (kind) {
        case WaveletKind::MexicanHat:
            return (Scalar(1) - z.square()) * (Scalar(-0.5) * z.square()).exp();
        }
        throw DomainError("domain error: unknown wavelet kind");
    }

    // Fourier magnitude, used only by the admissibility quadrature:
    // ghat(xi) = sqrt(2 pi) xi^2 exp(-xi^2/2)
    Scalar spectrum(Scalar xi) const {
        switch (kind) {
        case WaveletKind::MexicanHat: {
            const Scalar sqrt2pi = std::sqrt(Scalar(2) * Scalar(EIGEN_PI));
            return sqrt2pi * xi * xi * std::exp(Scalar(-0.5) * xi * xi);
        }
        }
        throw DomainError("domain error: unknown wavelet kind");
    }

    // Ratio between the labeled frequency of a map row and the internal scale
    // rate nu.  For a pure tone at omega0 the response magnitude along nu is
    // proportional to nu^{-1/2} ghat(omega0/nu), which for the hat spectrum
    // xi^2 exp(-xi^2/2) peaks where (omega0/nu)^2 = 5/2.  Dividing labels by
    // this ratio makes a row labeled omega respond most strongly to a tone at
    // omega.
    Scalar response_peak_ratio() const {
        switch (kind) {
        case WaveletKind::MexicanHat:
            return std::sqrt(Scalar(2.5));
        }
        throw DomainError("domain error: unknown wavelet kind");
    }
};

// Trapezoid grid for the admissibility integral over xi.
template <typename Scalar>
struct QuadratureSpec {
    Scalar xi_min = Scalar(1e-4);
    Scalar xi_max = Scalar(16);
    Index n = 4096;
};

namespace detail {

// Plain trapezoid of ghat(xi)^2 / xi on [lo, hi] with n points, summed in
// ascending order.
template <typename Scalar>
Scalar admissibility_quadrature(const AnalyzingWavelet<Scalar>& wavelet, Scalar lo, Scalar hi, Index n) {
    const Scalar h = (hi - lo) / Scalar(n - 1);
    Scalar acc = Scalar(0);
    for (Index k = 0; k < n; ++k) {
        const Scalar xi = lo + h * Scalar(k);
        const Scalar s = wavelet.spectrum(xi);
        Scalar term = s * s / xi * h;
        if (k == 0 || k == n - 1)
            term *= Scalar(0.5);
        acc += term;
    }
    return acc;
}

} // namespace detail

// C_g = integral of ghat(xi)^2 / xi over xi > 0, estimated on [xi_min, xi_max]
// and accepted only if the estimate is stable both under doubling n and under
// widening the range to [xi_min/2, 2 xi_max].  The value for the default spec
// agrees with pi to ~1e-11 but is never taken from a formula.
template <typename Scalar>
Scalar admissibility_constant(const AnalyzingWavelet<Scalar>& wavelet,
                              const QuadratureSpec<Scalar>& quad = QuadratureSpec<Scalar>{}) {
    if (!(quad.xi_min > Scalar(0)) || !(quad.xi_min < quad.xi_max))
        throw DomainError("domain error: admissibility quadrature needs 0 < xi_min < xi_max");
    if (quad.n < 1000)
        throw DomainError("domain error: admissibility quadrature needs at least 1000 points");

    const Scalar base = detail::admissibility_quadrature(wavelet, quad.xi_min, quad.xi_max, quad.n);
    const Scalar denser = detail::admissibility_quadrature(wavelet, quad.xi_min, quad.xi_max, 2 * quad.n);
    const Scalar wider =
        detail::admissibility_quadrature(wavelet, quad.xi_min / Scalar(2), Scalar(2) * quad.xi_max, quad.n);

    const Scalar tol = Scalar(1e-6);
    const Scalar rel_denser = std::abs(denser - base) / std::abs(base);
    const Scalar rel_wider = std::abs(wider - base) / std::abs(base);
    if (!(rel_denser <= tol) || !(rel_wider <= tol)) {
        std::ostringstream msg;
        msg << "convergence error: admissibility constant unstable on [" << quad.xi_min << ", " << quad.xi_max
            << "] with n = " << quad.n << " (relative change " << rel_denser << " on doubling n, " << rel_wider
            << " on widening the range)";
        throw ConvergenceError(msg.str());
    }
    if (!std::isfinite(base) || !(base > Scalar(0)))
        throw DomainError("domain error: admissibility constant is not finite and positive");
    return base;
}

// Reconstruction-side basis function Psi = g / C_g.  For the hat family g is
// its own dual shape up to this one normalizing constant.
template <typename Scalar>
struct DualBasisFunction {
    AnalyzingWavelet<Scalar> wavelet;
    Scalar admissibility = Scalar(0);

    Scalar evaluate(Scalar z) const { return wavelet.evaluate(z) / admissibility; }
};

template <typename Scalar>
DualBasisFunction<Scalar> dual_function(const AnalyzingWavelet<Scalar>& wavelet,
                                        const QuadratureSpec<Scalar>& quad = QuadratureSpec<Scalar>{}) {
    return DualBasisFunction<Scalar>{wavelet, admissibility_constant(wavelet, quad)};
}

} // namespace waveq
