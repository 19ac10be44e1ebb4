#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "hyperlab/operators.hpp"
#include "hyperlab/sequence_spaces.hpp"
#include "hyperlab/weights.hpp"

namespace hyperlab {

enum class VerdictValue { Holds, Fails, Inconclusive };

const char* verdict_name(VerdictValue v);
// holds only if both hold; fails dominates
VerdictValue conjunction(VerdictValue a, VerdictValue b);

struct Verdict {
    std::string predicate;
    VerdictValue value = VerdictValue::Inconclusive;
    double Q = 0;  // the extremal quantity compared against tau
    double tau = 1e-2;
    std::map<std::string, double> horizon;
    std::map<std::string, double> witness;
    std::vector<double> profile;  // per-n extremal values where meaningful
    std::string note;
    std::vector<Verdict> parts;
};

// Q = max_{n<=nMax} min_{k<=kMax} prod_{v=1}^n |w_{k+v}|
Verdict hcs_shift(const WeightSequence& w, std::int64_t n_max, std::int64_t k_max, double tau = 1e-2,
                  double lambda = 0);

struct TailCertificate {
    enum class Kind { Auto, None, Geometric, PSeries, Telescoping };
    Kind kind = Kind::Auto;
    double q = 0;         // geometric: t_{n+1} <= q t_n
    double exponent = 0;  // p-series: t_n n^s nonincreasing
};

// (prod_{v=1}^n |w_v|)^{-p}
double ufhc_term(const WeightSequence& w, double p, std::int64_t n, double lambda = 0);

Verdict ufhc_shift(const WeightSequence& w, double p, std::int64_t n_max, const TailCertificate& tail = {},
                   double tau = 1e-2, double lambda = 0);

struct UfhcsOptions {
    std::int64_t hcs_n_max = 50;
    std::int64_t hcs_k_max = 100000;
    std::int64_t sum_n_max = 1000000;
    TailCertificate tail;
    double tau = 1e-2;
    double lambda = 0;
};

Verdict ufhcs_shift(const WeightSequence& w, double p, const UfhcsOptions& opt = {});

// partial sums of prod_{v=0}^m |w_{-v}|^p over m >= 0
Verdict fhcs_bilateral(const WeightSequence& w, double p, std::int64_t m_max = 100000,
                       const TailCertificate& tail = {}, double tau = 1e-2);

struct KotheLimsupOptions {
    int j = 1;
    int m = 2;
    double C = 1;
    std::int64_t n_max = 1;
    std::int64_t k_min = -1;  // start of the trend window; default k_max / 10
    std::int64_t k_max = 10000;
    double tau = 1e-2;
};

// ratio sup_K p_j(T_n e_k) / (C p_m(e_k)) at k = kMax, with a monotone-tail check over [kMin, kMax]
Verdict kothe_limsup_test(const OperatorFamily& fam, const Interval& k_set, const KotheLimsupOptions& opt);

// Parameter-step sequence for the hitting condition, oriented T-parameter >= S-parameter.
struct DeltaRule {
    enum class Kind { IterateLog, DirectLog, Constant };
    Kind kind = Kind::Constant;
    double a = 1;      // left end of K
    double scale = 0;  // log(1 + eps / q(y)), or the constant value
    double at(std::int64_t k) const;
    std::string formula() const;
};

struct ChcOptions {
    std::int64_t truncation = 4096;
    int tuples = 64;
    int tuple_length = 32;
    std::uint64_t seed = 1;
    int delta_grid = 11;
};

struct ChcEvidence {
    Interval K;
    double epsilon = 0;
    std::int64_t C = 0;
    std::int64_t support_max = 0;
    double tail1 = 0;  // condition (1) bound at C
    double tail2 = 0;  // condition (2) bound at C
    double tail5 = 0;  // condition (5) bound at C
    std::vector<double> term_bounds;  // q(S_{k,a} y), k < truncation
    double beyond_truncation = 0;
    std::string extrapolation;
    DeltaRule delta;
    double divergence_c = 0;  // delta_k >= c / max(k,1)
    std::int64_t delta_checks = 0;
    double delta_worst = 0;  // max error / eps over the check grid
    int tuples = 0;
    int tuple_length = 0;
    std::uint64_t seed = 0;
    double tuple_worst1 = 0;
    double tuple_worst2 = 0;
    double tuple_worst5 = 0;
    SeminormSpec seminorm;
};

ChcEvidence chc_evidence(const OperatorFamily& fam, const Interval& k_set, const SeqVector& y, double epsilon,
                         const ChcOptions& opt = {});

struct RPShape {
    enum class Kind { Scalar, Monomial, Generic };
    Kind kind = Kind::Scalar;
    int degree = 1;
    std::vector<double> coeffs;  // ascending powers, generic shape only
    Interval range;              // parameter interval, lambda >= 0
};

struct RPResult {
    double value = 0;
    std::string method;
    std::string descriptor;
    std::int64_t grid = 0;
};

struct RPOptions {
    int grid = 101;
    double tol = 1e-10;
    int angles = 256;
    int radii = 32;
    bool force_bisection = false;
};

RPResult r_p(const RPShape& shape, const RPOptions& opt = {});
// grid over lambda on the closed interval, bisection on r per lambda
RPResult r_p_bisection(const std::vector<double>& coeffs, const Interval& range, const RPOptions& opt = {});

}  // namespace hyperlab
