#include "hyperlab/weights.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>
#include <vector>

#include "hyperlab/errors.hpp"

namespace hyperlab {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

std::string strip(const std::string& s) {
    std::string out;
    for (char ch : s)
        if (!std::isspace(static_cast<unsigned char>(ch))) out += ch;
    return out;
}

double parse_number(const std::string& s, const std::string& token) {
    std::size_t used = 0;
    double v = 0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        throw ConfigError("bad number '" + s + "' in weight token '" + token + "'");
    }
    if (used != s.size()) throw ConfigError("bad number '" + s + "' in weight token '" + token + "'");
    return v;
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

}  // namespace

WeightRule WeightRule::constant(double c) {
    if (c == 0 || !std::isfinite(c)) throw InvalidArgument("const weight must be nonzero and finite");
    WeightRule r;
    r.kind_ = Kind::Const;
    r.c_ = c;
    return r;
}

WeightRule WeightRule::ratio() {
    WeightRule r;
    r.kind_ = Kind::Ratio;
    return r;
}

WeightRule WeightRule::one_plus_lambda() {
    WeightRule r;
    r.kind_ = Kind::OnePlusLam;
    return r;
}

WeightRule WeightRule::one_plus(double l) {
    if (!std::isfinite(l)) throw InvalidArgument("one_plus constant must be finite");
    WeightRule r;
    r.kind_ = Kind::OnePlusFix;
    r.c_ = l;
    return r;
}

WeightRule WeightRule::linear() {
    WeightRule r;
    r.kind_ = Kind::Linear;
    return r;
}

WeightRule WeightRule::hash(std::uint64_t seed, double lo, double hi) {
    if (!(lo > 0) || !(hi >= lo) || !std::isfinite(hi)) throw InvalidArgument("hash weights need 0 < lo <= hi < inf");
    WeightRule r;
    r.kind_ = Kind::Hash;
    r.seed_ = seed;
    r.lo_ = lo;
    r.hi_ = hi;
    return r;
}

WeightRule WeightRule::parse(const std::string& raw) {
    const std::string t = strip(raw);
    if (t == "n") return linear();
    if (t == "ratio(n+1,n)") return ratio();
    if (t == "one_plus(lambda/n)") return one_plus_lambda();
    auto open = t.find('(');
    if (open == std::string::npos || t.back() != ')') throw ConfigError("unknown weight token '" + raw + "'");
    const std::string head = t.substr(0, open);
    const std::string body = t.substr(open + 1, t.size() - open - 2);
    std::vector<std::string> args;
    std::stringstream ss(body);
    for (std::string item; std::getline(ss, item, ',');) args.push_back(item);
    if (head == "const" && args.size() == 1) return constant(parse_number(args[0], raw));
    if (head == "one_plus" && args.size() == 1 && args[0].size() > 2 &&
        args[0].compare(args[0].size() - 2, 2, "/n") == 0)
        return one_plus(parse_number(args[0].substr(0, args[0].size() - 2), raw));
    if (head == "hash" && args.size() == 3) {
        double s = parse_number(args[0], raw);
        if (s < 0 || s != std::floor(s)) throw ConfigError("hash seed must be a nonnegative integer");
        return hash(static_cast<std::uint64_t>(s), parse_number(args[1], raw), parse_number(args[2], raw));
    }
    throw ConfigError("unknown weight token '" + raw + "'");
}

std::string WeightRule::token() const {
    switch (kind_) {
        case Kind::Const: return "const(" + fmt(c_) + ")";
        case Kind::Ratio: return "ratio(n+1,n)";
        case Kind::OnePlusLam: return "one_plus(lambda/n)";
        case Kind::OnePlusFix: return "one_plus(" + fmt(c_) + "/n)";
        case Kind::Linear: return "n";
        case Kind::Hash: return "hash(" + std::to_string(seed_) + "," + fmt(lo_) + "," + fmt(hi_) + ")";
    }
    return "?";
}

double WeightRule::at(std::int64_t n, double lambda) const {
    const double x = static_cast<double>(n);
    switch (kind_) {
        case Kind::Const: return c_;
        case Kind::Ratio: return (x + 1) / x;
        case Kind::OnePlusLam: return 1 + lambda / x;
        case Kind::OnePlusFix: return 1 + c_ / x;
        case Kind::Linear: return x;
        case Kind::Hash: {
            std::uint64_t h = splitmix64(seed_ ^ splitmix64(static_cast<std::uint64_t>(n)));
            double u = static_cast<double>(h >> 11) * 0x1.0p-53;
            return lo_ + (hi_ - lo_) * u;
        }
    }
    return 0;
}

WeightSequence WeightSequence::unilateral(WeightRule rule) {
    WeightSequence w;
    w.side_ = Side::Unilateral;
    w.positive_ = rule;
    w.negative_ = rule;
    return w;
}

WeightSequence WeightSequence::bilateral(WeightRule negative, WeightRule positive) {
    WeightSequence w;
    w.side_ = Side::Bilateral;
    w.positive_ = positive;
    w.negative_ = negative;
    return w;
}

WeightSequence& WeightSequence::override_at(std::int64_t n, Scalar value) {
    if (side_ == Side::Unilateral && n < 1) throw InvalidArgument("unilateral weights are indexed from 1");
    if (value == Scalar(0) || !std::isfinite(value.real()) || !std::isfinite(value.imag())) throw InvalidWeight(n);
    overrides_[n] = value;
    return *this;
}

const WeightRule& WeightSequence::rule_for(std::int64_t n) const {
    return (side_ == Side::Bilateral && n <= 0) ? negative_ : positive_;
}

bool WeightSequence::depends_on_lambda() const {
    return positive_.depends_on_lambda() || (side_ == Side::Bilateral && negative_.depends_on_lambda());
}

std::int64_t WeightSequence::override_extent() const {
    std::int64_t e = 0;
    for (const auto& [n, v] : overrides_) e = std::max(e, n < 0 ? -n : n);
    return e;
}

Scalar WeightSequence::at(std::int64_t n, double lambda) const {
    if (side_ == Side::Unilateral && n < 1) throw InvalidArgument("unilateral weights are indexed from 1");
    auto it = overrides_.find(n);
    Scalar v = it != overrides_.end() ? it->second : Scalar(rule_for(n).at(n, lambda));
    if (v == Scalar(0) || !std::isfinite(v.real()) || !std::isfinite(v.imag())) throw InvalidWeight(n);
    return v;
}

double WeightSequence::log_abs(std::int64_t n, double lambda) const { return std::log(std::abs(at(n, lambda))); }

std::string WeightSequence::describe() const {
    std::string s = side_ == Side::Unilateral ? positive_.token()
                                              : "bilateral(" + negative_.token() + ";" + positive_.token() + ")";
    if (!overrides_.empty()) s += "+table[" + std::to_string(overrides_.size()) + "]";
    return s;
}

}  // namespace hyperlab
