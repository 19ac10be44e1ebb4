#include "hyperlab/integer_sets.hpp"

#include <algorithm>
#include <cmath>

#include "hyperlab/errors.hpp"

namespace hyperlab {

namespace {

__extension__ typedef __int128 i128;

std::int64_t narrow(i128 v, const char* what) {
    if (v > static_cast<i128>(INT64_MAX) || v < static_cast<i128>(INT64_MIN))
        throw InvalidArgument(std::string("integer overflow evaluating ") + what);
    return static_cast<std::int64_t>(v);
}

// a/b < c/d for positive denominators
bool frac_less(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) {
    return static_cast<i128>(a) * d < static_cast<i128>(c) * b;
}

}  // namespace

IndexSequence IndexSequence::affine(std::int64_t a, std::int64_t b) {
    if (a < 1) throw InvalidArgument("affine sequence needs slope >= 1");
    if (a + b < 0) throw InvalidArgument("affine sequence has a negative first value");
    IndexSequence s;
    s.kind_ = Kind::Affine;
    s.a_ = a;
    s.b_ = b;
    s.name_ = "affine(" + std::to_string(a) + "," + std::to_string(b) + ")";
    return s;
}

IndexSequence IndexSequence::quadratic(std::int64_t a, std::int64_t b, std::int64_t c) {
    if (a < 0) throw InvalidArgument("quadratic sequence needs a >= 0");
    if (3 * a + b <= 0) throw InvalidArgument("quadratic sequence is not strictly increasing");
    if (a + b + c < 0) throw InvalidArgument("quadratic sequence has a negative first value");
    IndexSequence s;
    s.kind_ = Kind::Quadratic;
    s.a_ = a;
    s.b_ = b;
    s.c_ = c;
    s.name_ = "quadratic(" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + ")";
    return s;
}

IndexSequence IndexSequence::list(std::vector<std::int64_t> values, bool normalize) {
    if (normalize) {
        std::sort(values.begin(), values.end());
        values.erase(std::unique(values.begin(), values.end()), values.end());
    }
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (values[i] < 0) throw InvalidArgument("index sequence has a negative value");
        if (i > 0 && values[i] <= values[i - 1])
            throw InvalidArgument("index sequence is not strictly increasing at rank " + std::to_string(i + 1));
    }
    IndexSequence s;
    s.kind_ = Kind::List;
    s.values_ = std::move(values);
    s.name_ = "list";
    return s;
}

IndexSequence IndexSequence::table(std::function<std::int64_t(std::int64_t)> rule, std::string name,
                                   std::int64_t checked) {
    if (!rule) throw InvalidArgument("empty table rule");
    std::int64_t prev = -1;
    for (std::int64_t k = 1; k <= checked; ++k) {
        std::int64_t v = rule(k);
        if (v < 0) throw InvalidArgument("table sequence has a negative value at rank " + std::to_string(k));
        if (v <= prev) throw InvalidArgument("table sequence is not strictly increasing at rank " + std::to_string(k));
        prev = v;
    }
    IndexSequence s;
    s.kind_ = Kind::Table;
    s.rule_ = std::move(rule);
    s.name_ = std::move(name);
    return s;
}

std::optional<std::int64_t> IndexSequence::max_rank() const {
    if (kind_ == Kind::List) return static_cast<std::int64_t>(values_.size());
    return std::nullopt;
}

bool IndexSequence::has_rank(std::int64_t k) const {
    if (k < 1) return false;
    if (kind_ == Kind::List) return k <= static_cast<std::int64_t>(values_.size());
    return true;
}

std::int64_t IndexSequence::at(std::int64_t k) const {
    if (!has_rank(k)) throw InvalidArgument("rank " + std::to_string(k) + " outside the sequence");
    switch (kind_) {
        case Kind::List: return values_[static_cast<std::size_t>(k - 1)];
        case Kind::Affine: return narrow(static_cast<i128>(a_) * k + b_, "affine sequence");
        case Kind::Quadratic:
            return narrow(static_cast<i128>(a_) * k * k + static_cast<i128>(b_) * k + c_, "quadratic sequence");
        case Kind::Table: return rule_(k);
    }
    return 0;
}

std::int64_t IndexSequence::count_upto(std::int64_t m) const {
    if (empty()) return 0;
    switch (kind_) {
        case Kind::List:
            return std::upper_bound(values_.begin(), values_.end(), m) - values_.begin();
        case Kind::Affine:
            if (m < a_ + b_) return 0;
            return (m - b_) / a_;
        case Kind::Quadratic:
        case Kind::Table: {
            if (m < at(1)) return 0;
            std::int64_t lo = 1, hi = 2;
            auto value = [&](std::int64_t k) -> i128 {
                if (kind_ == Kind::Quadratic)
                    return static_cast<i128>(a_) * k * k + static_cast<i128>(b_) * k + c_;
                return rule_(k);
            };
            while (value(hi) <= m) {
                lo = hi;
                hi *= 2;
            }
            // value(lo) <= m < value(hi)
            while (hi - lo > 1) {
                std::int64_t mid = lo + (hi - lo) / 2;
                if (value(mid) <= m) lo = mid; else hi = mid;
            }
            return lo;
        }
    }
    return 0;
}

DensityReport density(const IndexSequence& set, std::int64_t horizon) {
    if (horizon < 1) throw InvalidArgument("density horizon must be >= 1");
    DensityReport r;
    r.horizon = horizon;
    r.window_start = horizon / 2;
    r.exact = set.closed_form();
    const std::int64_t lo = r.window_start;

    std::int64_t c = set.count_upto(lo);
    std::int64_t min_n = c, min_d = lo + 1;
    std::int64_t max_n = c, max_d = lo + 1;
    std::optional<std::int64_t> cap = set.max_rank();
    for (std::int64_t k = c + 1; !cap || k <= *cap; ++k) {
        std::int64_t n = set.at(k);
        if (n > horizon) break;
        // quotient just before n is c/n, just after it is (c+1)/(n+1)
        if (frac_less(c, n, min_n, min_d)) { min_n = c; min_d = n; }
        ++c;
        if (frac_less(max_n, max_d, c, n + 1)) { max_n = c; max_d = n + 1; }
    }
    if (frac_less(c, horizon + 1, min_n, min_d)) { min_n = c; min_d = horizon + 1; }

    r.count = c;
    r.lower = Rational(min_n, min_d);
    r.upper = Rational(max_n, max_d);
    r.at_horizon = Rational(c, horizon + 1);
    r.degenerate = c == 0;
    return r;
}

DensityReport density(const std::vector<std::int64_t>& finite_set, std::int64_t horizon) {
    return density(IndexSequence::list(finite_set, true), horizon);
}

std::int64_t PhiMap::at(std::int64_t k) const {
    if (k < 1 || k > kmax()) throw UnresolvedRank(k, "phi table does not cover this rank");
    return table[static_cast<std::size_t>(k - 1)];
}

bool PhiMap::all_certified() const {
    return std::all_of(certificate.begin(), certificate.end(), [](bool b) { return b; });
}

bool phi_inequality(const IndexSequence& nk, const Rational& delta, std::int64_t k, std::int64_t phi) {
    const std::int64_t n = nk.at(k + phi);
    if (n == 0) return true;
    // (phi+1) * k * den >= num * (k-1) * n
    i128 lhs = static_cast<i128>(phi + 1) * k * delta.den();
    i128 rhs = static_cast<i128>(delta.num()) * (k - 1) * n;
    return lhs >= rhs;
}

std::optional<std::int64_t> least_phi(const IndexSequence& nk, const Rational& delta, std::int64_t k,
                                       std::int64_t limit) {
    for (std::int64_t phi = 0; phi <= limit; ++phi) {
        if (!nk.has_rank(k + phi))
            throw UnresolvedRank(k, "sequence undefined at rank " + std::to_string(k + phi));
        if (phi_inequality(nk, delta, k, phi)) return phi;
    }
    return std::nullopt;
}

PhiMap min_phi(const IndexSequence& nk, std::int64_t kmax, const PhiOptions& opt) {
    if (kmax < 0) throw InvalidArgument("kmax must be nonnegative");
    PhiMap out;
    out.delta = opt.delta ? *opt.delta : density(nk, opt.estimate_horizon).upper;
    if (out.delta <= Rational(0)) throw InvalidArgument("target density must be positive");
    out.table.reserve(static_cast<std::size_t>(kmax));
    for (std::int64_t k = 1; k <= kmax; ++k) {
        auto phi = least_phi(nk, out.delta, k, opt.scan_bound);
        if (!phi) throw UnresolvedRank(k, "scan bound of " + std::to_string(opt.scan_bound) + " exceeded");
        out.table.push_back(*phi);
        out.certificate.push_back(phi_inequality(nk, out.delta, k, *phi));
    }
    return out;
}

PhiMap phi_for_deltas(const std::vector<DeltaSequence>& deltas, std::int64_t kmax,
                      const PhiForDeltasOptions& opt) {
    if (deltas.empty()) throw InvalidArgument("phi_for_deltas needs at least one sequence");
    // absorbs rounding in partial sums that are exactly 1 in real arithmetic
    constexpr long double slack = 1e-12L;
    PhiMap out;
    out.delta = Rational(0);
    for (std::int64_t k = 1; k <= kmax; ++k) {
        const std::size_t tracked = std::min<std::size_t>(deltas.size(), static_cast<std::size_t>(k));
        std::int64_t best = 0;
        for (std::size_t s = 0; s < tracked; ++s) {
            long double sum = 0;
            std::int64_t steps = 0;
            for (;;) {
                double d = deltas[s](k + steps);
                if (!(d > 0) || !std::isfinite(d))
                    throw InvalidArgument("delta sequence " + std::to_string(s + 1) + " is not positive at " +
                                          std::to_string(k + steps));
                sum += d;
                if (sum >= 1.0L - slack) break;
                if (++steps > opt.scan_bound)
                    throw DivergenceUnverified(k, "partial sums of sequence " + std::to_string(s + 1) +
                                                      " stall below 1");
            }
            best = std::max(best, steps);
        }
        out.table.push_back(best);
        out.certificate.push_back(true);
    }
    return out;
}

IndexUnion IndexUnion::build(const std::vector<std::int64_t>& anchors,
                             const std::function<std::optional<std::int64_t>(std::int64_t)>& phi,
                             std::int64_t horizon) {
    if (horizon < 0) throw InvalidArgument("negative union horizon");
    IndexUnion u;
    u.horizon_ = horizon;
    std::int64_t prev = 0;
    for (std::int64_t k : anchors) {
        if (k <= prev) throw InvalidArgument("anchors must be strictly increasing ranks >= 1");
        prev = k;
        if (k > horizon) break;
        u.anchors_.push_back(k);
        std::optional<std::int64_t> p = phi(k);
        std::int64_t end = (p && *p <= horizon - k) ? k + *p : horizon;
        if (!u.intervals_.empty() && k <= u.intervals_.back().second + 1)
            u.intervals_.back().second = std::max(u.intervals_.back().second, end);
        else
            u.intervals_.emplace_back(k, end);
        if (end == horizon) break;
    }
    return u;
}

IndexUnion IndexUnion::from_phi(const std::vector<std::int64_t>& anchors, const PhiMap& phi,
                                std::int64_t horizon) {
    return build(anchors, [&](std::int64_t k) -> std::optional<std::int64_t> { return phi.at(k); }, horizon);
}

IndexUnion IndexUnion::censored(const IndexSequence& nk, const Rational& delta,
                                const std::vector<std::int64_t>& anchors, std::int64_t horizon) {
    return build(
        anchors,
        [&](std::int64_t k) { return least_phi(nk, delta, k, horizon - k); },
        horizon);
}

IndexUnion IndexUnion::all(std::int64_t horizon) {
    IndexUnion u;
    u.horizon_ = horizon;
    if (horizon >= 1) {
        u.anchors_.push_back(1);
        u.intervals_.emplace_back(1, horizon);
    }
    return u;
}

bool IndexUnion::contains(std::int64_t k) const {
    auto it = std::upper_bound(intervals_.begin(), intervals_.end(), k,
                               [](std::int64_t v, const auto& iv) { return v < iv.first; });
    if (it == intervals_.begin()) return false;
    --it;
    return k <= it->second;
}

std::int64_t IndexUnion::size() const {
    std::int64_t s = 0;
    for (const auto& [a, b] : intervals_) s += b - a + 1;
    return s;
}

DensityReport image_density(const IndexSequence& nk, const IndexUnion& ranks, std::int64_t horizon) {
    if (horizon < 1) throw InvalidArgument("density horizon must be >= 1");
    const std::int64_t needed = nk.count_upto(horizon);
    if (ranks.horizon() < needed)
        throw InvalidArgument("rank union horizon " + std::to_string(ranks.horizon()) +
                              " does not cover the " + std::to_string(needed) + " ranks below N");
    std::vector<std::int64_t> image;
    for (const auto& [a, b] : ranks.intervals()) {
        for (std::int64_t k = a; k <= b && k <= needed; ++k) image.push_back(nk.at(k));
    }
    return density(IndexSequence::list(std::move(image)), horizon);
}

}  // namespace hyperlab
