#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "hyperlab/sequence_spaces.hpp"

namespace hyperlab {

// Closed-form weight rule w_n, possibly depending on a parameter lambda.
class WeightRule {
public:
    enum class Kind {
        Const,       // const(c)
        Ratio,       // ratio(n+1,n): (n+1)/n
        OnePlusLam,  // one_plus(lambda/n): 1 + lambda/n
        OnePlusFix,  // one_plus(L/n) for a number L
        Linear,      // n: w_n = n
        Hash,        // hash(seed,lo,hi): deterministic pseudo-random modulus in [lo,hi]
    };

    static WeightRule constant(double c);
    static WeightRule ratio();
    static WeightRule one_plus_lambda();
    static WeightRule one_plus(double l);
    static WeightRule linear();
    static WeightRule hash(std::uint64_t seed, double lo, double hi);
    static WeightRule parse(const std::string& token);

    Kind kind() const { return kind_; }
    double c() const { return c_; }
    double lo() const { return lo_; }
    double hi() const { return hi_; }
    std::uint64_t seed() const { return seed_; }
    bool depends_on_lambda() const { return kind_ == Kind::OnePlusLam; }
    std::string token() const;

    double at(std::int64_t n, double lambda) const;

private:
    Kind kind_ = Kind::Const;
    double c_ = 1;
    double lo_ = 0, hi_ = 0;
    std::uint64_t seed_ = 0;
};

// Weight sequence on {n >= 1} (unilateral) or on Z (bilateral: `negative` governs n <= 0).
class WeightSequence {
public:
    static WeightSequence unilateral(WeightRule rule);
    static WeightSequence bilateral(WeightRule negative, WeightRule positive);

    WeightSequence& override_at(std::int64_t n, Scalar value);

    Side side() const { return side_; }
    const WeightRule& positive() const { return positive_; }
    const WeightRule& negative() const { return negative_; }
    const std::map<std::int64_t, Scalar>& overrides() const { return overrides_; }
    const WeightRule& rule_for(std::int64_t n) const;
    bool depends_on_lambda() const;
    // largest |n| carrying an override, 0 when none
    std::int64_t override_extent() const;

    // throws InvalidWeight for zero or non-finite values and for n outside the side
    Scalar at(std::int64_t n, double lambda = 0) const;
    double log_abs(std::int64_t n, double lambda = 0) const;
    std::string describe() const;

private:
    Side side_ = Side::Unilateral;
    WeightRule positive_;
    WeightRule negative_;
    std::map<std::int64_t, Scalar> overrides_;
};

}  // namespace hyperlab
