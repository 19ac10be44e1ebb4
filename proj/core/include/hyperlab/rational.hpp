#pragma once

#include <compare>
#include <cstdint>
#include <string>

namespace hyperlab {

// Reduced fraction with positive denominator.
class Rational {
public:
    Rational() = default;
    Rational(std::int64_t num, std::int64_t den = 1);

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }
    double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }
    std::string str() const;

    friend bool operator==(const Rational& a, const Rational& b) = default;
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

private:
    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

Rational operator*(const Rational& a, const Rational& b);
Rational operator-(const Rational& a, const Rational& b);

}  // namespace hyperlab
