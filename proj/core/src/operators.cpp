#include "hyperlab/operators.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hyperlab/errors.hpp"

namespace hyperlab {

SeqVector apply_shift_power(const WeightSequence& w, const SeqVector& x, std::int64_t n, double lambda) {
    if (n < 0) throw InvalidArgument("shift power must be >= 0");
    if (n == 0) return x;
    SeqVector out(x.side());
    for (const auto& [i, v] : x.coords()) {
        const std::int64_t j = i - n;
        if (x.side() == Side::Unilateral && j < 0) continue;
        Scalar prod = v;
        for (std::int64_t m = j + 1; m <= i; ++m) prod *= w.at(m, lambda);
        out.set(j, prod);
    }
    return out;
}

SeqVector apply_forward_power(const WeightSequence& w, const SeqVector& y, std::int64_t n, double lambda) {
    if (n < 0) throw InvalidArgument("forward power must be >= 0");
    if (n == 0) return y;
    SeqVector out(y.side());
    for (const auto& [j, v] : y.coords()) {
        Scalar prod = v;
        for (std::int64_t m = j + 1; m <= j + n; ++m) prod /= w.at(m, lambda);
        out.set(j + n, prod);
    }
    return out;
}

bool Interval::contains(double x) const {
    bool above = lo_open ? x > lo : x >= lo;
    bool below = hi_open ? x < hi : x <= hi;
    return above && below;
}

bool Interval::closure_contains(double x) const { return x >= lo && x <= hi; }

bool Interval::bounded() const { return std::isfinite(lo) && std::isfinite(hi); }

Interval Interval::clip_to_closure(const Interval& outer) const {
    Interval r = closed(std::max(lo, outer.lo), std::min(hi, outer.hi));
    if (r.lo > r.hi) throw ParameterOutOfRange("interval " + str() + " misses " + outer.str());
    return r;
}

std::string Interval::str() const {
    std::ostringstream os;
    os.precision(12);
    os << (lo_open ? "(" : "[") << lo << "," << hi << (hi_open ? ")" : "]");
    return os.str();
}

SpaceSpec SpaceSpec::lp(double p, Side side) {
    if (!(p >= 1) || !std::isfinite(p)) throw InvalidArgument("exponent p must satisfy 1 <= p < inf");
    SpaceSpec s;
    s.kind = Kind::Lp;
    s.p = p;
    s.side = side;
    return s;
}

SpaceSpec SpaceSpec::kothe(std::shared_ptr<const KotheMatrix> a, double p) {
    if (!a) throw InvalidArgument("Kothe space without a matrix");
    if (!(p >= 1) || !std::isfinite(p)) throw InvalidArgument("exponent p must satisfy 1 <= p < inf");
    SpaceSpec s;
    s.kind = Kind::Kothe;
    s.p = p;
    s.matrix = std::move(a);
    s.side = Side::Unilateral;
    return s;
}

SeminormSpec SpaceSpec::seminorm(int j) const {
    if (kind == Kind::Lp) return SeminormSpec::lp(p);
    return SeminormSpec::kothe(matrix, j, p);
}

std::string SpaceSpec::describe() const {
    std::ostringstream os;
    if (kind == Kind::Lp) os << (side == Side::Bilateral ? "lp(Z,p=" : "lp(p=") << p << ")";
    else os << "kothe(" << matrix->name() << ",p=" << p << ")";
    return os.str();
}

OperatorFamily OperatorFamily::lambda_b(double p) {
    OperatorFamily f = shift(WeightSequence::unilateral(WeightRule::constant(1)), SpaceSpec::lp(p), Action::Iterate,
                             Interval::open(1, INFINITY));
    f.name_ = "lambdaB";
    return f;
}

OperatorFamily OperatorFamily::cs(double p) {
    OperatorFamily f = shift(WeightSequence::unilateral(WeightRule::one_plus_lambda()), SpaceSpec::lp(p),
                             Action::Direct, Interval::open(1, INFINITY));
    f.name_ = "CS";
    return f;
}

OperatorFamily OperatorFamily::diff() {
    OperatorFamily f = shift(WeightSequence::unilateral(WeightRule::linear()),
                             SpaceSpec::kothe(std::make_shared<KotheMatrix>(KotheMatrix::entire()), 1),
                             Action::Iterate, Interval::open(0, INFINITY));
    f.name_ = "diff";
    return f;
}

OperatorFamily OperatorFamily::shift(WeightSequence w, SpaceSpec space, Action action, Interval range) {
    if (action == Action::PolyIterate) throw InvalidArgument("use poly_shift for polynomial families");
    if (w.side() != space.side) throw InvalidArgument("weight side does not match the space");
    if (!(range.lo < range.hi)) throw InvalidArgument("empty parameter interval");
    OperatorFamily f;
    f.name_ = "shift(" + w.describe() + ")";
    f.w_ = std::move(w);
    f.action_ = action;
    f.range_ = range;
    f.space_ = std::move(space);
    bool nonneg = range.lo >= 0;
    bool monotone_rule = !f.w_.depends_on_lambda() ||
                         (f.w_.side() == Side::Unilateral && f.w_.positive().kind() == WeightRule::Kind::OnePlusLam);
    if (action == Action::Iterate) monotone_rule = !f.w_.depends_on_lambda();
    f.envelope_ = (nonneg && monotone_rule) ? Envelope::Monotone : Envelope::Grid;
    f.spot_check();
    return f;
}

OperatorFamily OperatorFamily::poly_shift(std::vector<Scalar> coeffs, WeightSequence w, SpaceSpec space,
                                          Interval range) {
    while (!coeffs.empty() && coeffs.back() == Scalar(0)) coeffs.pop_back();
    if (coeffs.empty()) throw InvalidArgument("polynomial must be nonzero");
    if (w.side() != space.side) throw InvalidArgument("weight side does not match the space");
    if (!(range.lo < range.hi)) throw InvalidArgument("empty parameter interval");
    OperatorFamily f;
    std::ostringstream os;
    os << "poly-shift([";
    for (std::size_t i = 0; i < coeffs.size(); ++i) os << (i ? "," : "") << coeffs[i].real();
    os << "]," << w.describe() << ")";
    f.name_ = os.str();
    f.w_ = std::move(w);
    f.action_ = Action::PolyIterate;
    f.range_ = range;
    f.space_ = std::move(space);
    f.coeffs_ = std::move(coeffs);
    f.envelope_ = (range.lo >= 0 && !f.w_.depends_on_lambda()) ? Envelope::Monotone : Envelope::Grid;
    return f;
}

OperatorFamily& OperatorFamily::set_grid(Envelope e, int grid_size) {
    envelope_ = e;
    grid_size_ = grid_size;
    return *this;
}

SeqVector OperatorFamily::step(const SeqVector& x, double lambda) const {
    switch (action_) {
        case Action::Iterate: return Scalar(lambda) * apply_shift_power(w_, x, 1);
        case Action::Direct: return apply_shift_power(w_, x, 1, lambda);
        case Action::PolyIterate: {
            SeqVector out(x.side());
            SeqVector power = x;
            for (std::size_t i = 0; i < coeffs_.size(); ++i) {
                if (i > 0) power = apply_shift_power(w_, power, 1);
                if (coeffs_[i] != Scalar(0)) out += coeffs_[i] * power;
            }
            return Scalar(lambda) * out;
        }
    }
    return x;
}

SeqVector OperatorFamily::apply(const SeqVector& x, std::int64_t n, double lambda) const {
    if (n < 0) throw InvalidArgument("iterate count must be >= 0");
    switch (action_) {
        case Action::Iterate: return Scalar(std::pow(lambda, static_cast<double>(n))) * apply_shift_power(w_, x, n);
        case Action::Direct: return apply_shift_power(w_, x, n, lambda);
        case Action::PolyIterate: {
            SeqVector v = x;
            for (std::int64_t i = 0; i < n && !v.empty(); ++i) v = step(v, lambda);
            return v;
        }
    }
    return x;
}

void OperatorFamily::check_parameter(double lambda) const {
    if (!range_.contains(lambda))
        throw ParameterOutOfRange("parameter " + std::to_string(lambda) + " outside " + range_.str());
}

SeqVector OperatorFamily::right_inverse(const SeqVector& y, std::int64_t n, double lambda) const {
    check_parameter(lambda);
    switch (action_) {
        case Action::Iterate:
            return Scalar(std::pow(lambda, -static_cast<double>(n))) * apply_forward_power(w_, y, n);
        case Action::Direct: return apply_forward_power(w_, y, n, lambda);
        case Action::PolyIterate:
            throw NotSupported("no right inverse is defined for polynomial shift families");
    }
    return y;
}

SeqVector OperatorFamily::round_trip(const SeqVector& y, std::int64_t n, double lambda, double mu) const {
    check_parameter(mu);
    if (n < 0) throw InvalidArgument("iterate count must be >= 0");
    switch (action_) {
        case Action::Iterate: return Scalar(std::pow(lambda / mu, static_cast<double>(n))) * y;
        case Action::Direct: {
            SeqVector out(y.side());
            for (const auto& [j, v] : y.coords()) {
                long double log_ratio = 0;
                Scalar phase = 1;
                for (std::int64_t m = j + 1; m <= j + n; ++m) {
                    const Scalar r = w_.at(m, lambda) / w_.at(m, mu);
                    log_ratio += std::log(std::abs(r));
                    phase *= r / std::abs(r);
                }
                out.set(j, v * phase * static_cast<double>(std::exp(log_ratio)));
            }
            return out;
        }
        case Action::PolyIterate:
            throw NotSupported("no right inverse is defined for polynomial shift families");
    }
    return y;
}

void OperatorFamily::spot_check() const {
    if (!has_right_inverse()) return;
    double lam = range_.bounded() ? 0.5 * (range_.lo + range_.hi)
                                  : (std::isfinite(range_.lo) ? range_.lo + 1 : 1.0);
    // lambda = 0 makes (lambda B)^n singular; move toward the upper end
    if (lam == 0) lam = std::isfinite(range_.hi) ? 0.5 * range_.hi : 1.0;
    std::int64_t first = space_.side == Side::Bilateral ? -2 : 0;
    for (std::int64_t k = first; k <= 3; ++k) {
        for (std::int64_t n = 0; n <= 3; ++n) {
            SeqVector e = SeqVector::basis(k, space_.side);
            SeqVector back = apply(right_inverse(e, n, lam), n, lam);
            if (back.size() != 1 || std::abs(back.get(k) - Scalar(1)) > 1e-12)
                throw InvalidArgument("family " + name_ + " fails T_n S_n = id on e_" + std::to_string(k));
        }
    }
}

std::string OperatorFamily::describe() const {
    const char* act = action_ == Action::Iterate ? "iterate" : action_ == Action::Direct ? "direct" : "poly";
    return name_ + " " + act + " on " + space_.describe() + " with lambda in " + range_.str();
}

std::vector<double> sup_parameters(const OperatorFamily& fam, const Interval& k) {
    if (!k.bounded() || k.lo > k.hi) throw InvalidArgument("parameter set must be a compact interval");
    if (k.lo < fam.range().lo || k.hi > fam.range().hi)
        throw ParameterOutOfRange("compact set " + k.str() + " is not inside the closure of " + fam.range().str());
    if (fam.envelope() == OperatorFamily::Envelope::Monotone) return {k.hi};
    const int g = fam.grid_size();
    if (g < 1) throw ConfigError("family " + fam.name() + " has no monotone envelope and no grid size");
    if (g == 1) return {k.lo};
    std::vector<double> pts;
    pts.reserve(static_cast<std::size_t>(g));
    for (int i = 0; i < g; ++i) pts.push_back(k.lo + (k.hi - k.lo) * i / (g - 1));
    return pts;
}

double family_bound_on_basis(const OperatorFamily& fam, const Interval& k_set, std::int64_t n, std::int64_t k,
                             const SeminormSpec& num, const SeminormSpec& den) {
    const SeqVector e = SeqVector::basis(k, fam.space().side);
    const double log_den = den.eval(e).log_value;
    double best = 0;
    for (double lam : sup_parameters(fam, k_set)) {
        SeqVector t = fam.apply(e, n, lam);
        if (t.empty()) continue;
        best = std::max(best, std::exp(num.eval(t).log_value - log_den));
    }
    return best;
}

}  // namespace hyperlab
