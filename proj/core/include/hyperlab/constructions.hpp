#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hyperlab/criteria.hpp"
#include "hyperlab/integer_sets.hpp"
#include "hyperlab/operators.hpp"

namespace hyperlab {

struct HitRecord {
    double lambda = 0;
    std::int64_t k = -1;  // -1 when no step in the window hits
    double error = 0;     // seminorm(T_{k,lambda} x - y)
};

struct ChcBlockReport {
    SeqVector x;
    SeqVector y;
    Interval K;
    double epsilon = 0;
    SeminormSpec seminorm;
    std::int64_t N0 = 0;
    std::int64_t N1 = 0;
    std::int64_t C = 0;
    std::vector<double> ladder;          // lambda_0 = a, ..., lambda_L
    std::vector<std::int64_t> anchors;   // k_1, ..., k_L
    std::vector<double> deltas;          // delta_{k_l}
    std::vector<HitRecord> per_lambda;
    double x_norm = 0;
    double max_error = 0;
    bool verified = false;  // x_norm < eps and every grid error < 3 eps
    DeltaRule delta_rule;
};

struct ChcBlockOptions {
    std::int64_t N0 = 0;
    std::int64_t L_cap = 1000000;
    int grid = 101;
    ChcOptions evidence;
};

ChcBlockReport chc_block_vector(const OperatorFamily& fam, const Interval& k_set, const SeqVector& y, double epsilon,
                                const ChcBlockOptions& opt = {});

struct DecayBasis {
    std::vector<std::int64_t> indices;     // k_j; the basis vectors are e_{-k_j}
    std::vector<double> certificates;      // max_{n <= horizon} prod_{v=0}^n |w_{-k_j-v}|
    std::vector<std::int64_t> scan_max_f;  // max F at each step, -1 when F is empty
    std::int64_t horizon = 0;
    Side side = Side::Bilateral;
};

// Requires fhcs_bilateral(w, p) to hold; scans F up to `horizon`.
DecayBasis bilateral_decay_basis(const WeightSequence& w, std::int64_t count, std::int64_t k0, std::int64_t horizon,
                                 double p = 2);

struct MkConstraint {
    int l = 0, n = 0, j = 0, m = 0;
    double value = 0;  // sup_{K_n} p_j(T_m e_{n_l}) / p_{m(n,j)}(e_{n_l})
    double bound = 0;  // 2 C(n,j)
};

struct MkBasis {
    std::vector<std::int64_t> indices;  // n_1 < n_2 < ...
    std::vector<MkConstraint> table;
    std::string description;
};

struct MkOptions {
    std::function<double(int, int)> C = [](int, int) { return 1.0; };
    std::function<int(int, int)> m = [](int, int j) { return 2 * j; };
    std::function<Interval(int)> K;  // default [1/n, n] clipped to the closure of the parameter interval
    std::int64_t start_index = 0;
    std::int64_t scan_cap = 1000000;
    std::string m_token = "2j";
};

// "j", "2j", "nj" or "j+c"
std::function<int(int, int)> parse_m_rule(const std::string& token);

MkBasis kothe_mk_basis(const OperatorFamily& fam, int count, const MkOptions& opt = {});

// Supplies perturbations landing partial sums in the dense set X_{n,0}.
class DenseOracle {
public:
    virtual ~DenseOracle() = default;
    virtual std::string name() const = 0;
    // perturbation for basis vector i at step l, with p_i(result) below `smallness`
    virtual SeqVector perturb(int i, int l, const SeqVector& current, double smallness) const = 0;
};

// Finitely supported vectors are already dense-set members for backward shifts.
class FiniteSupportOracle : public DenseOracle {
public:
    std::string name() const override { return "finite-support"; }
    SeqVector perturb(int, int, const SeqVector& current, double) const override {
        return SeqVector(current.side());
    }
};

struct FamilyOnCompact {
    OperatorFamily family;
    Interval K;
};

struct NicemnBound {
    int l = 0;
    int i = 0;
    std::string condition;  // "f", "f2" or "k"
    double value = 0;
    double bound = 0;
};

struct NicemnResult {
    std::vector<SeqVector> x;
    std::vector<std::int64_t> selected;  // k_l
    std::vector<std::pair<std::int64_t, std::int64_t>> windows;  // [k_l, k_l + phi(k_l)]
    std::vector<NicemnBound> bounds;
    std::string oracle;
};

struct NicemnOptions {
    int truncation = 4;
    std::optional<PhiMap> phi;  // phi = 0 when absent
    std::int64_t scan_cap = 100000;
};

NicemnResult nicemn_synthesize(const std::vector<FamilyOnCompact>& families, const std::vector<SeqVector>& u,
                               const DenseOracle& oracle, const NicemnOptions& opt = {});

}  // namespace hyperlab
