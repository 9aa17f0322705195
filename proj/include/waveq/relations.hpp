#pragma once

#include <array>
#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "waveq/errors.hpp"
#include "waveq/qubit.hpp"

namespace waveq {

// Pairwise combination of two states' amplitudes: U is stored row-major as
// (U11, U12, U21, U22), where the first index walks the first state's slots
// (m then n) and the second index the second state's.
template <typename Scalar>
struct RelationState {
    std::array<Scalar, 4> u{};

    Scalar u11() const { return u[0]; }
    Scalar u12() const { return u[1]; }
    Scalar u21() const { return u[2]; }
    Scalar u22() const { return u[3]; }

    static std::array<std::pair<char, char>, 4> labels() {
        return {{{'m', 'm'}, {'m', 'n'}, {'n', 'm'}, {'n', 'n'}}};
    }

    Scalar max_abs() const {
        Scalar m = Scalar(0);
        for (const Scalar& v : u)
            m = std::max(m, std::abs(v));
        return m;
    }
};

namespace detail {

inline const char* slot_name(int idx) {
    static const char* names[4] = {"U11", "U12", "U21", "U22"};
    return names[idx];
}

} // namespace detail

// Apply a two-argument rule to each (first-state slot, second-state slot)
// pair.  Every slot must evaluate to a finite value.
template <typename Scalar, typename Rule>
RelationState<Scalar> relate_general(Scalar alpha1, Scalar beta1, Scalar alpha2, Scalar beta2, Rule&& rule) {
    RelationState<Scalar> out;
    out.u[0] = rule(alpha1, alpha2);
    out.u[1] = rule(alpha1, beta2);
    out.u[2] = rule(beta1, alpha2);
    out.u[3] = rule(beta1, beta2);
    for (int i = 0; i < 4; ++i)
        if (!std::isfinite(out.u[i])) {
            std::ostringstream msg;
            msg << "evaluation error: relation rule produced a non-finite value at " << detail::slot_name(i);
            throw DomainError(msg.str());
        }
    return out;
}

// The built-in rule: plain products of amplitudes, U_pq = W_p(1) W_q(2).
template <typename Scalar>
RelationState<Scalar> relate_product(const QubitState<Scalar>& q1, const QubitState<Scalar>& q2) {
    return relate_general(q1.point_m.coeff, q1.point_n.coeff, q2.point_m.coeff, q2.point_n.coeff,
                          [](Scalar a, Scalar b) { return a * b; });
}

// The four two-zero patterns a relation can match.  The reduced-form tags are
// the names these patterns carry in serialized relations.
enum class BellCondition { A, B, C, D };

inline char bell_condition_letter(BellCondition c) {
    switch (c) {
    case BellCondition::A:
        return 'A';
    case BellCondition::B:
        return 'B';
    case BellCondition::C:
        return 'C';
    case BellCondition::D:
        return 'D';
    }
    throw DomainError("domain error: unknown bell condition");
}

inline std::string bell_condition_form(BellCondition c) {
    switch (c) {
    case BellCondition::A:
        return "9a";
    case BellCondition::B:
        return "9b";
    case BellCondition::C:
        return "9c";
    case BellCondition::D:
        return "9d";
    }
    throw DomainError("domain error: unknown bell condition");
}

template <typename Scalar>
struct BellClassification {
    std::vector<BellCondition> matched; // ascending A..D
    bool degenerate = false;            // all four slots vanish
    Scalar threshold = Scalar(0);       // absolute zero threshold that was applied
};

// A slot counts as zero when |U| <= tol * max(1, max|U|), so the test is
// relative for large relations and absolute near zero; tol = 0 demands exact
// zeros.  Condition A needs (U11, U21) zero, B (U11, U22), C (U12, U21),
// D (U12, U22).
template <typename Scalar>
BellClassification<Scalar> classify_bell_condition(const RelationState<Scalar>& s, Scalar tol = Scalar(1e-10)) {
    if (!(tol >= Scalar(0)))
        throw DomainError("domain error: tolerance must be non-negative");
    BellClassification<Scalar> out;
    out.threshold = tol * std::max(Scalar(1), s.max_abs());
    const bool z11 = std::abs(s.u11()) <= out.threshold;
    const bool z12 = std::abs(s.u12()) <= out.threshold;
    const bool z21 = std::abs(s.u21()) <= out.threshold;
    const bool z22 = std::abs(s.u22()) <= out.threshold;
    if (z11 && z21)
        out.matched.push_back(BellCondition::A);
    if (z11 && z22)
        out.matched.push_back(BellCondition::B);
    if (z12 && z21)
        out.matched.push_back(BellCondition::C);
    if (z12 && z22)
        out.matched.push_back(BellCondition::D);
    out.degenerate = z11 && z12 && z21 && z22;
    return out;
}

// U11 U22 - U12 U21
template <typename Scalar>
Scalar determinant(const RelationState<Scalar>& s) {
    return s.u11() * s.u22() - s.u12() * s.u21();
}

// |det U| <= tol * max(1, max|U|^2); every product relation is separated, and
// patterns A and D force a zero determinant while B and C do not.
template <typename Scalar>
bool is_separated(const RelationState<Scalar>& s, Scalar tol = Scalar(1e-10)) {
    if (!(tol >= Scalar(0)))
        throw DomainError("domain error: tolerance must be non-negative");
    const Scalar m = s.max_abs();
    return std::abs(determinant(s)) <= tol * std::max(Scalar(1), m * m);
}

} // namespace waveq
