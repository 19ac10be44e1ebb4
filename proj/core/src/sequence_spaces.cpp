#include "hyperlab/sequence_spaces.hpp"

#include <algorithm>
#include <cmath>

#include "hyperlab/errors.hpp"

namespace hyperlab {

namespace {

const double kLogDirectLimit = std::log(1e300);

void check_exponent(double p) {
    if (!(p >= 1) || !std::isfinite(p)) throw InvalidArgument("exponent p must satisfy 1 <= p < inf");
}

struct Term {
    double mag;  // may overflow to inf or underflow to 0
    double log_mag;
};

// (sum mag_i^p)^{1/p}; switches to log-sum-exp when a term leaves the safe range
SeminormValue combine(const std::vector<Term>& terms, double p) {
    SeminormValue out;
    out.p = p;
    if (terms.empty()) return out;
    double top = -INFINITY;
    bool direct = true;
    for (const Term& t : terms) {
        top = std::max(top, t.log_mag);
        if (!(t.mag > 0) || !std::isfinite(t.mag) || p * t.log_mag > kLogDirectLimit) direct = false;
    }
    if (direct) {
        double s = 0;
        for (const Term& t : terms) s += p == 1 ? t.mag : (p == 2 ? t.mag * t.mag : std::pow(t.mag, p));
        out.value = p == 1 ? s : (p == 2 ? std::sqrt(s) : std::pow(s, 1.0 / p));
        if (out.value > 0 && std::isfinite(out.value)) {
            out.log_value = std::log(out.value);
            return out;
        }
    }
    double s = 0;
    for (const Term& t : terms) s += std::exp(p * (t.log_mag - top));
    out.log_value = top + std::log(s) / p;
    out.value = std::exp(out.log_value);
    return out;
}

}  // namespace

const char* side_name(Side s) { return s == Side::Unilateral ? "uni" : "bi"; }

SeqVector SeqVector::basis(std::int64_t k, Side side, Scalar c) {
    SeqVector v(side);
    v.set(k, c);
    return v;
}

void SeqVector::check_index(std::int64_t k) const {
    if (side_ == Side::Unilateral && k < 0)
        throw InvalidArgument("negative index " + std::to_string(k) + " in a unilateral vector");
}

std::int64_t SeqVector::min_index() const {
    if (coords_.empty()) throw InvalidArgument("min_index of the zero vector");
    return coords_.begin()->first;
}

std::int64_t SeqVector::max_index() const {
    if (coords_.empty()) throw InvalidArgument("max_index of the zero vector");
    return coords_.rbegin()->first;
}

Scalar SeqVector::get(std::int64_t k) const {
    auto it = coords_.find(k);
    return it == coords_.end() ? Scalar(0) : it->second;
}

void SeqVector::set(std::int64_t k, Scalar v) {
    check_index(k);
    if (v == Scalar(0)) coords_.erase(k);
    else coords_[k] = v;
}

void SeqVector::add_to(std::int64_t k, Scalar v) {
    check_index(k);
    auto it = coords_.find(k);
    if (it == coords_.end()) {
        if (v != Scalar(0)) coords_.emplace(k, v);
        return;
    }
    it->second += v;
    if (it->second == Scalar(0)) coords_.erase(it);
}

SeqVector& SeqVector::operator+=(const SeqVector& o) {
    for (const auto& [k, v] : o.coords_) add_to(k, v);
    return *this;
}

SeqVector& SeqVector::operator-=(const SeqVector& o) {
    for (const auto& [k, v] : o.coords_) add_to(k, -v);
    return *this;
}

SeqVector& SeqVector::operator*=(Scalar c) {
    if (c == Scalar(0)) {
        coords_.clear();
        return *this;
    }
    for (auto it = coords_.begin(); it != coords_.end();) {
        it->second *= c;
        if (it->second == Scalar(0)) it = coords_.erase(it);
        else ++it;
    }
    return *this;
}

SeqVector operator+(SeqVector a, const SeqVector& b) { return a += b; }
SeqVector operator-(SeqVector a, const SeqVector& b) { return a -= b; }
SeqVector operator*(Scalar c, SeqVector a) { return a *= c; }

SeminormValue lp_norm(const SeqVector& x, double p) {
    check_exponent(p);
    std::vector<Term> terms;
    terms.reserve(x.size());
    for (const auto& [k, v] : x.coords()) {
        double m = std::abs(v);
        terms.push_back({m, std::log(m)});
    }
    SeminormValue out = combine(terms, p);
    out.j = 0;
    return out;
}

KotheMatrix KotheMatrix::entire() {
    KotheMatrix m;
    m.name_ = "ENTIRE";
    m.log_entry_ = [](int j, std::int64_t k) { return static_cast<double>(k) * std::log(static_cast<double>(j)); };
    m.entry_ = [](int j, std::int64_t k) { return std::pow(static_cast<double>(j), static_cast<double>(k)); };
    return m;
}

KotheMatrix KotheMatrix::power(std::vector<double> ladder) {
    if (ladder.empty()) throw InvalidArgument("POWER matrix needs a nonempty ladder");
    for (std::size_t i = 0; i < ladder.size(); ++i) {
        if (!(ladder[i] > 0) || !std::isfinite(ladder[i])) throw InvalidArgument("POWER ladder entries must be positive");
        if (i > 0 && ladder[i] < ladder[i - 1]) throw InvalidArgument("POWER ladder must be nondecreasing");
    }
    KotheMatrix m;
    m.name_ = "POWER";
    m.max_j_ = static_cast<int>(ladder.size());
    std::vector<double> logs;
    for (double r : ladder) logs.push_back(std::log(r));
    m.log_entry_ = [logs](int j, std::int64_t k) { return static_cast<double>(k) * logs[static_cast<std::size_t>(j - 1)]; };
    m.entry_ = [ladder](int j, std::int64_t k) {
        return std::pow(ladder[static_cast<std::size_t>(j - 1)], static_cast<double>(k));
    };
    return m;
}

KotheMatrix KotheMatrix::custom(std::string name, LogRule log_entry) {
    if (!log_entry) throw InvalidArgument("empty Kothe rule");
    for (int j = 1; j <= 32; ++j) {
        for (std::int64_t k = 0; k <= 1024; ++k) {
            double here = log_entry(j, k);
            if (!std::isfinite(here)) throw InvalidArgument("Kothe entry is not a positive finite number");
            if (j < 32 && log_entry(j + 1, k) < here)
                throw InvalidArgument("Kothe entries must be nondecreasing in j (fails at j=" + std::to_string(j) +
                                      ", k=" + std::to_string(k) + ")");
        }
    }
    KotheMatrix m;
    m.name_ = std::move(name);
    m.log_entry_ = std::move(log_entry);
    return m;
}

double KotheMatrix::log_entry(int j, std::int64_t k) const {
    if (j < 1) throw InvalidArgument("seminorm rank j must be >= 1");
    if (max_j_ > 0 && j > max_j_)
        throw InvalidArgument("seminorm rank " + std::to_string(j) + " exceeds the ladder length");
    if (k < 0) throw InvalidArgument("Kothe column must be >= 0");
    return log_entry_(j, k);
}

double KotheMatrix::entry(int j, std::int64_t k) const {
    double l = log_entry(j, k);
    return entry_ ? entry_(j, k) : std::exp(l);
}

SeminormValue kothe_seminorm(const SeqVector& x, const KotheMatrix& a, int j, double p) {
    check_exponent(p);
    if (x.side() != Side::Unilateral) throw InvalidArgument("Kothe seminorms take unilateral vectors");
    std::vector<Term> terms;
    terms.reserve(x.size());
    for (const auto& [k, v] : x.coords()) {
        double m = std::abs(v);
        terms.push_back({m * a.entry(j, k), std::log(m) + a.log_entry(j, k)});
    }
    SeminormValue out = combine(terms, p);
    out.j = j;
    return out;
}

SeminormSpec SeminormSpec::with_rank(int rank) const {
    SeminormSpec s = *this;
    if (kind == Kind::Kothe) s.j = rank;
    return s;
}

SeminormValue SeminormSpec::eval(const SeqVector& x) const {
    if (kind == Kind::Lp) return lp_norm(x, p);
    if (!matrix) throw ConfigError("Kothe seminorm without a matrix");
    return kothe_seminorm(x, *matrix, j, p);
}

std::string SeminormSpec::describe() const {
    if (kind == Kind::Lp) return "lp(p=" + std::to_string(p) + ")";
    return "kothe(" + (matrix ? matrix->name() : std::string("?")) + ",j=" + std::to_string(j) +
           ",p=" + std::to_string(p) + ")";
}

}  // namespace hyperlab
