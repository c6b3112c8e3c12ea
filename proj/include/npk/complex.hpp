#pragma once

#include "npk/enclosure.hpp"
#include "npk/rational.hpp"

namespace npk {

// Rectangular complex scalar over a certified (or exact) real scalar.
template <class S>
struct Cx {
    S re{};
    S im{};

    Cx() = default;
    Cx(S r, S i) : re(std::move(r)), im(std::move(i)) {}
    explicit Cx(S r) : re(std::move(r)), im{} {}
    Cx(long x) : re(static_cast<S>(x)), im(static_cast<S>(0)) {}

    Cx conj() const { return Cx(re, -im); }
    S norm_sq() const { return re * re + im * im; }

    Cx operator-() const { return Cx(-re, -im); }
    friend Cx operator+(const Cx& a, const Cx& b) { return Cx(a.re + b.re, a.im + b.im); }
    friend Cx operator-(const Cx& a, const Cx& b) { return Cx(a.re - b.re, a.im - b.im); }
    friend Cx operator*(const Cx& a, const Cx& b) {
        return Cx(a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re);
    }
    friend Cx operator*(const S& s, const Cx& b) { return Cx(s * b.re, s * b.im); }
    friend Cx operator*(const Cx& a, const S& s) { return s * a; }
    friend Cx operator/(const Cx& a, const S& s) { return Cx(a.re / s, a.im / s); }
    friend Cx operator/(const Cx& a, const Cx& b) {
        S n = b.norm_sq();
        Cx num = a * b.conj();
        return Cx(num.re / n, num.im / n);
    }
    Cx& operator+=(const Cx& b) { return *this = *this + b; }
    Cx& operator-=(const Cx& b) { return *this = *this - b; }
    Cx& operator*=(const Cx& b) { return *this = *this * b; }

    friend bool operator==(const Cx& a, const Cx& b) { return a.re == b.re && a.im == b.im; }
};

// ADL hooks used by Eigen's generic math layer
template <class S> Cx<S> conj(const Cx<S>& a) { return a.conj(); }
template <class S> S real(const Cx<S>& a) { return a.re; }
template <class S> S imag(const Cx<S>& a) { return a.im; }
template <class S> S abs2(const Cx<S>& a) { return a.norm_sq(); }

using CxE = Cx<Enclosure>;
using CxQ = Cx<Rational>;

inline Enclosure abs(const CxE& z) { return sqrt(z.norm_sq()); }

inline CxE to_cxe(const CxQ& z, long bits) {
    return CxE(Enclosure::from_rational(z.re, bits), Enclosure::from_rational(z.im, bits));
}

}  // namespace npk
