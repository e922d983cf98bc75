#ifndef QDISCORD_FAMILIES_HPP
#define QDISCORD_FAMILIES_HPP

#include <cmath>
#include <optional>
#include <string>
#include <string_view>
#include <type_traits>
#include <variant>

#include "qdiscord/state.hpp"

namespace qdiscord {

/// (1-xi) I/4 + xi |psi-><psi-|, xi in [-1/3, 1].
struct Werner { double xi; };
/// Phi+ weight alpha mixed with |01>,|10> populations, alpha in [0, 1].
struct Alpha { double alpha; };
/// Phi+ weight beta mixed with Psi+ weight 1-beta, beta in [0, 1].
struct Beta { double beta; };
/// The two-parameter X family: 0 <= a <= 1, a-1 <= b <= 1-a.
struct TwoParam { double a; double b; };
/// sqrt(lambda)|00> + sqrt(1-lambda)|11>, lambda in [0, 1].
struct PureSchmidt { double lambda; };

using FamilyParam = std::variant<Werner, Alpha, Beta, TwoParam, PureSchmidt>;

enum class FamilyKind { Werner, Alpha, Beta, TwoParam, Pure };

inline FamilyKind kind_of(const FamilyParam& p) {
    return static_cast<FamilyKind>(p.index());
}

inline std::string_view name(FamilyKind kind) {
    switch (kind) {
    case FamilyKind::Werner: return "werner";
    case FamilyKind::Alpha: return "alpha";
    case FamilyKind::Beta: return "beta";
    case FamilyKind::TwoParam: return "twoparam";
    case FamilyKind::Pure: return "pure";
    }
    return "unknown";
}

inline std::optional<FamilyKind> parse_family_kind(std::string_view s) {
    for (auto k : {FamilyKind::Werner, FamilyKind::Alpha, FamilyKind::Beta, FamilyKind::TwoParam, FamilyKind::Pure})
        if (name(k) == s) return k;
    return std::nullopt;
}

/// Builds a FamilyParam from up to two numeric parameters (the second is only
/// read for TwoParam).
inline FamilyParam make_param(FamilyKind kind, double p1, double p2 = 0.0) {
    switch (kind) {
    case FamilyKind::Werner: return Werner{p1};
    case FamilyKind::Alpha: return Alpha{p1};
    case FamilyKind::Beta: return Beta{p1};
    case FamilyKind::TwoParam: return TwoParam{p1, p2};
    case FamilyKind::Pure: return PureSchmidt{p1};
    }
    return Alpha{p1};
}

inline double first_param(const FamilyParam& p) {
    return std::visit([](const auto& v) -> double {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Werner>) return v.xi;
        else if constexpr (std::is_same_v<T, Alpha>) return v.alpha;
        else if constexpr (std::is_same_v<T, Beta>) return v.beta;
        else if constexpr (std::is_same_v<T, TwoParam>) return v.a;
        else return v.lambda;
    }, p);
}

inline std::optional<double> second_param(const FamilyParam& p) {
    if (const auto* tp = std::get_if<TwoParam>(&p)) return tp->b;
    return std::nullopt;
}

/// Throws ParamOutOfRange with a message such as "alpha out of range [0,1]".
inline void check_range(const FamilyParam& p) {
    constexpr double slack = 1e-12;
    auto inside = [](double v, double lo, double hi) {
        return std::isfinite(v) && v >= lo - slack && v <= hi + slack;
    };
    std::visit([&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Werner>) {
            if (!inside(v.xi, -1.0 / 3.0, 1.0)) throw ParamOutOfRange("werner out of range [-1/3,1]");
        } else if constexpr (std::is_same_v<T, Alpha>) {
            if (!inside(v.alpha, 0.0, 1.0)) throw ParamOutOfRange("alpha out of range [0,1]");
        } else if constexpr (std::is_same_v<T, Beta>) {
            if (!inside(v.beta, 0.0, 1.0)) throw ParamOutOfRange("beta out of range [0,1]");
        } else if constexpr (std::is_same_v<T, TwoParam>) {
            if (!inside(v.a, 0.0, 1.0)) throw ParamOutOfRange("twoparam a out of range [0,1]");
            if (!inside(v.b, v.a - 1.0, 1.0 - v.a)) throw ParamOutOfRange("twoparam b out of range [a-1,1-a]");
        } else {
            if (!inside(v.lambda, 0.0, 1.0)) throw ParamOutOfRange("pure out of range [0,1]");
        }
    }, p);
}

template <typename Real = double>
DensityMatrix<Real> make_family(const FamilyParam& p) {
    check_range(p);
    Matrix4c<Real> m = Matrix4c<Real>::Zero();
    std::visit([&m](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Werner>) {
            const Real xi(v.xi);
            const Real bg = (Real(1) - xi) / Real(4);
            m.diagonal().setConstant(bg);
            m(1, 1) += xi / Real(2);
            m(2, 2) += xi / Real(2);
            m(1, 2) = m(2, 1) = -xi / Real(2);
        } else if constexpr (std::is_same_v<T, Alpha> || std::is_same_v<T, Beta>) {
            Real w;
            if constexpr (std::is_same_v<T, Alpha>) w = Real(v.alpha);
            else w = Real(v.beta);
            m(0, 0) = m(0, 3) = m(3, 0) = m(3, 3) = w / Real(2);
            m(1, 1) = m(2, 2) = (Real(1) - w) / Real(2);
            if constexpr (std::is_same_v<T, Beta>) m(1, 2) = m(2, 1) = (Real(1) - w) / Real(2);
        } else if constexpr (std::is_same_v<T, TwoParam>) {
            const Real a(v.a), b(v.b);
            m(0, 0) = m(0, 3) = m(3, 0) = m(3, 3) = a / Real(2);
            m(1, 1) = (Real(1) - a - b) / Real(2);
            m(2, 2) = (Real(1) - a + b) / Real(2);
        } else {
            const Real lam = std::clamp(Real(v.lambda), Real(0), Real(1));
            Vector4c<Real> psi = Vector4c<Real>::Zero();
            psi(0) = std::sqrt(lam);
            psi(3) = std::sqrt(Real(1) - lam);
            m = psi * psi.adjoint();
        }
    }, p);
    return DensityMatrix<Real>::assume_valid(m);
}

/// (|00> + |11>)/sqrt(2).
template <typename Real = double>
Vector4c<Real> bell_phi_plus() {
    Vector4c<Real> v = Vector4c<Real>::Zero();
    v(0) = v(3) = Real(1) / std::sqrt(Real(2));
    return v;
}

} // namespace qdiscord

#endif // QDISCORD_FAMILIES_HPP
