#include "hyperlab/rational.hpp"

#include <numeric>

#include "hyperlab/errors.hpp"

namespace hyperlab {

namespace {

__extension__ typedef __int128 i128;

Rational from_wide(i128 n, i128 d) {
    if (d == 0) throw InvalidArgument("rational with zero denominator");
    if (d < 0) { n = -n; d = -d; }
    i128 a = n < 0 ? -n : n;
    i128 b = d;
    while (b != 0) { i128 t = a % b; a = b; b = t; }
    if (a > 1) { n /= a; d /= a; }
    constexpr i128 lim = static_cast<i128>(INT64_MAX);
    if (n > lim || n < -lim || d > lim) throw InvalidArgument("rational overflow");
    return Rational(static_cast<std::int64_t>(n), static_cast<std::int64_t>(d));
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
    if (den == 0) throw InvalidArgument("rational with zero denominator");
    if (den < 0) { num = -num; den = -den; }
    std::int64_t g = std::gcd(num, den);
    if (g > 1) { num /= g; den /= g; }
    num_ = num;
    den_ = den;
}

std::string Rational::str() const {
    return std::to_string(num_) + "/" + std::to_string(den_);
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    i128 l = static_cast<i128>(a.num()) * b.den();
    i128 r = static_cast<i128>(b.num()) * a.den();
    if (l < r) return std::strong_ordering::less;
    if (l > r) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

Rational operator*(const Rational& a, const Rational& b) {
    return from_wide(static_cast<i128>(a.num()) * b.num(), static_cast<i128>(a.den()) * b.den());
}

Rational operator-(const Rational& a, const Rational& b) {
    return from_wide(static_cast<i128>(a.num()) * b.den() - static_cast<i128>(b.num()) * a.den(),
                     static_cast<i128>(a.den()) * b.den());
}

}  // namespace hyperlab
