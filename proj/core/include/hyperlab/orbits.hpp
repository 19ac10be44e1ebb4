#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hyperlab/constructions.hpp"
#include "hyperlab/integer_sets.hpp"
#include "hyperlab/operators.hpp"

namespace hyperlab {

struct OrbitTrace {
    std::string family;
    double lambda = 0;
    SeqVector x;
    std::int64_t N = 0;
    SeminormSpec seminorm;
    std::vector<double> seminorms;  // N + 1 values, step 0 is x itself
    std::vector<double> distances;  // empty without a target
};

struct OrbitOptions {
    std::optional<SeminormSpec> seminorm;  // family default when absent
    std::optional<SeqVector> target;
    std::size_t support_cap = std::size_t{1} << 16;
};

OrbitTrace orbit(const OperatorFamily& fam, double lambda, const SeqVector& x, std::int64_t N,
                 const OrbitOptions& opt = {});

struct ReturnSet {
    SeqVector y;
    double epsilon = 0;
    SeminormSpec seminorm;
    std::int64_t N = 0;
    std::vector<std::int64_t> hits;  // n with seminorm(T_n x - y) < eps
};

struct ReturnResult {
    ReturnSet set;
    DensityReport density;
    OrbitTrace trace;
};

ReturnResult return_density(const OperatorFamily& fam, double lambda, const SeqVector& x, const SeqVector& y,
                            double epsilon, std::int64_t N, const std::optional<SeminormSpec>& seminorm = {});

struct SweepResult {
    std::vector<HitRecord> rows;  // k = -1 marks a violation; error is then the best over the window
    std::int64_t violations = 0;
    double max_error = 0;
};

// independent re-check of a block report by step iteration over [N0, N1]
SweepResult hitting_sweep(const OperatorFamily& fam, const ChcBlockReport& report, int grid = 101);

struct DecaySweepResult {
    std::int64_t samples = 0;
    std::int64_t checks = 0;
    std::int64_t violations = 0;
    double worst_margin = 0;        // max of lhs - rhs over all samples, n and J (<= 0 when the bound holds)
    std::vector<double> max_norm;   // per n, max over samples of ||B^n x||
};

struct DecaySweepOptions {
    std::int64_t samples = 100;
    std::int64_t N = 64;
    std::uint64_t seed = 1;
    double p = 2;
    bool zero_coefficients = false;
};

DecaySweepResult decay_sweep(const WeightSequence& w, const DecayBasis& basis, const DecaySweepOptions& opt = {});

struct ResidualRow {
    int i = 0;
    std::int64_t k = 0;
    double residual = 0;  // sup over families and the parameter grid of q(T_{k,lambda} x_i)
};

std::vector<ResidualRow> decay_sweep(const std::vector<FamilyOnCompact>& families, const NicemnResult& basis,
                                     std::int64_t N, int grid = 11);

}  // namespace hyperlab
