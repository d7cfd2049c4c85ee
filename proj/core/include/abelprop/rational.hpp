#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace abelprop {

// Exact arithmetic used by the rational mode of the coefficient machinery.
// Doubles are dyadic rationals, so the conversion Rational(double) is exact.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

namespace detail {

// Build a scalar of type T from an exact integer ratio. Doubles round once,
// rationals stay exact.
template <class T>
struct FromRatio {
    static T get(const BigInt& num, const BigInt& den) {
        return Rational(num, den).convert_to<T>();
    }
};

template <>
struct FromRatio<Rational> {
    static Rational get(const BigInt& num, const BigInt& den) { return Rational(num, den); }
};

template <class T>
T from_ratio(const BigInt& num, const BigInt& den) {
    return FromRatio<T>::get(num, den);
}

}  // namespace detail
}  // namespace abelprop
