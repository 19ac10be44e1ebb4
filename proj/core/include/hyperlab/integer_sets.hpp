#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hyperlab/rational.hpp"

namespace hyperlab {

// Strictly increasing sequence of nonnegative integers, accessed by rank k >= 1.
class IndexSequence {
public:
    enum class Kind { List, Affine, Quadratic, Table };

    // n_k = a*k + b
    static IndexSequence affine(std::int64_t a, std::int64_t b);
    // n_k = a*k^2 + b*k + c
    static IndexSequence quadratic(std::int64_t a, std::int64_t b, std::int64_t c);
    // values[0] is rank 1; sorted and deduplicated when `normalize` is set
    static IndexSequence list(std::vector<std::int64_t> values, bool normalize = false);
    // user rule; monotonicity is checked on ranks 1..`checked`
    static IndexSequence table(std::function<std::int64_t(std::int64_t)> rule, std::string name,
                               std::int64_t checked = 1024);
    // all nonnegative integers, n_k = k - 1
    static IndexSequence naturals() { return affine(1, -1); }

    Kind kind() const { return kind_; }
    const std::string& name() const { return name_; }
    bool closed_form() const { return kind_ == Kind::Affine || kind_ == Kind::Quadratic; }
    bool empty() const { return kind_ == Kind::List && values_.empty(); }
    // largest admissible rank, or nullopt when unbounded
    std::optional<std::int64_t> max_rank() const;
    bool has_rank(std::int64_t k) const;

    std::int64_t at(std::int64_t k) const;
    // #{k : n_k <= m}; 0 for m < n_1
    std::int64_t count_upto(std::int64_t m) const;

    const std::vector<std::int64_t>& values() const { return values_; }
    std::int64_t a() const { return a_; }
    std::int64_t b() const { return b_; }
    std::int64_t c() const { return c_; }

private:
    IndexSequence() = default;

    Kind kind_ = Kind::List;
    std::string name_;
    std::int64_t a_ = 0, b_ = 0, c_ = 0;
    std::vector<std::int64_t> values_;
    std::function<std::int64_t(std::int64_t)> rule_;
};

struct DensityReport {
    Rational lower;
    Rational upper;
    Rational at_horizon;  // #(A ∩ [0,N]) / (N+1)
    std::int64_t horizon = 0;
    std::int64_t window_start = 0;  // floor(N/2)
    std::int64_t count = 0;         // #(A ∩ [0,N])
    bool exact = false;
    bool degenerate = false;
};

// Window proxies min/max of #(A∩[0,m])/(m+1) over m in [floor(N/2), N].
DensityReport density(const IndexSequence& set, std::int64_t horizon);
DensityReport density(const std::vector<std::int64_t>& finite_set, std::int64_t horizon);

struct PhiMap {
    std::vector<std::int64_t> table;  // table[k-1] = phi(k)
    std::vector<bool> certificate;
    Rational delta;
    bool minimal = true;

    std::int64_t kmax() const { return static_cast<std::int64_t>(table.size()); }
    std::int64_t at(std::int64_t k) const;
    bool all_certified() const;
};

struct PhiOptions {
    std::optional<Rational> delta;          // upper density estimate used when absent
    std::int64_t estimate_horizon = 1000000;
    std::int64_t scan_bound = 100000000;    // increments per rank
};

// Exact test of (phi+1)/n_{k+phi} >= delta*(1 - 1/k).
bool phi_inequality(const IndexSequence& nk, const Rational& delta, std::int64_t k, std::int64_t phi);
// Least phi satisfying the inequality for rank k, scanning at most `limit` values; nullopt if none.
std::optional<std::int64_t> least_phi(const IndexSequence& nk, const Rational& delta, std::int64_t k,
                                       std::int64_t limit);

PhiMap min_phi(const IndexSequence& nk, std::int64_t kmax, const PhiOptions& opt = {});

using DeltaSequence = std::function<double(std::int64_t)>;  // i >= 1

struct PhiForDeltasOptions {
    std::int64_t scan_bound = 100000000;
};

// At rank k only the first min(k, deltas.size()) sequences are tracked.
PhiMap phi_for_deltas(const std::vector<DeltaSequence>& deltas, std::int64_t kmax,
                      const PhiForDeltasOptions& opt = {});

// Rank set ∪_s [k_s, k_s + phi(k_s)] ∩ [1, horizon], stored as disjoint sorted intervals.
class IndexUnion {
public:
    IndexUnion() = default;

    // phi(k) supplied for each anchor; nullopt means the interval reaches past the horizon.
    static IndexUnion build(const std::vector<std::int64_t>& anchors,
                            const std::function<std::optional<std::int64_t>(std::int64_t)>& phi,
                            std::int64_t horizon);
    static IndexUnion from_phi(const std::vector<std::int64_t>& anchors, const PhiMap& phi,
                               std::int64_t horizon);
    // minimal phi computed per anchor, with the scan censored at the horizon
    static IndexUnion censored(const IndexSequence& nk, const Rational& delta,
                               const std::vector<std::int64_t>& anchors, std::int64_t horizon);
    static IndexUnion all(std::int64_t horizon);

    bool contains(std::int64_t k) const;
    std::int64_t size() const;
    std::int64_t horizon() const { return horizon_; }
    const std::vector<std::pair<std::int64_t, std::int64_t>>& intervals() const { return intervals_; }
    const std::vector<std::int64_t>& anchors_used() const { return anchors_; }

private:
    std::vector<std::int64_t> anchors_;
    std::vector<std::pair<std::int64_t, std::int64_t>> intervals_;
    std::int64_t horizon_ = 0;
};

// Density of {n_k : k in I} up to N.
DensityReport image_density(const IndexSequence& nk, const IndexUnion& ranks, std::int64_t horizon);

}  // namespace hyperlab
