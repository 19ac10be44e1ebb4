#include "hyperlab/criteria.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "hyperlab/errors.hpp"

namespace hyperlab {

namespace {

double uniform01(std::mt19937_64& g) { return static_cast<double>(g() >> 11) * 0x1.0p-53; }

double positive_exponent(double p) {
    if (!(p >= 1) || !std::isfinite(p)) throw InvalidArgument("exponent p must satisfy 1 <= p < inf");
    return p;
}

// Outcome of inspecting the tail of a positive series sum_{n>N} t_n given t_N.
struct TailClosure {
    enum class State { Converges, Diverges, Unknown };
    State state = State::Unknown;
    double bound = INFINITY;  // upper bound on the tail when converging
    std::string certificate;
};

TailClosure geometric_tail(double t_last, double q, const std::string& name) {
    TailClosure c;
    c.certificate = name;
    if (q < 1) {
        c.state = TailClosure::State::Converges;
        c.bound = t_last * q / (1 - q);
    } else {
        c.state = TailClosure::State::Diverges;
    }
    return c;
}

// Checks a user-supplied certificate against the computed terms on the horizon's second half.
// `terms[i]` is the term with index `first + i`; `shift` converts the index to the p-series variable.
TailClosure supplied_tail(const TailCertificate& cert, const std::vector<double>& terms, std::int64_t first,
                          double shift, double p) {
    TailClosure c;
    const std::size_t n = terms.size();
    if (n < 2) {
        c.certificate = "horizon too short";
        return c;
    }
    const std::size_t from = n / 2;
    const double t_last = terms.back();
    const double last_index = static_cast<double>(first + static_cast<std::int64_t>(n) - 1) + shift;
    switch (cert.kind) {
        case TailCertificate::Kind::Geometric: {
            c.certificate = "geometric(q=" + std::to_string(cert.q) + ")";
            for (std::size_t i = from; i + 1 < n; ++i) {
                if (terms[i + 1] > cert.q * terms[i] * (1 + 1e-12)) {
                    c.certificate += " contradicted on horizon";
                    return c;
                }
            }
            return geometric_tail(t_last, cert.q, c.certificate);
        }
        case TailCertificate::Kind::PSeries: {
            const double s = cert.exponent;
            c.certificate = "p-series(s=" + std::to_string(s) + ")";
            for (std::size_t i = from; i + 1 < n; ++i) {
                double x0 = static_cast<double>(first + static_cast<std::int64_t>(i)) + shift;
                if (terms[i + 1] * std::pow(x0 + 1, s) > terms[i] * std::pow(x0, s) * (1 + 1e-12)) {
                    c.certificate += " contradicted on horizon";
                    return c;
                }
            }
            if (s > 1) {
                c.state = TailClosure::State::Converges;
                c.bound = t_last * last_index / (s - 1);
            }
            return c;
        }
        case TailCertificate::Kind::Telescoping: {
            c.certificate = "telescoping";
            const double ref = terms[from] * std::pow(static_cast<double>(first + static_cast<std::int64_t>(from)) + shift, p);
            for (std::size_t i = from; i < n; ++i) {
                double x = static_cast<double>(first + static_cast<std::int64_t>(i)) + shift;
                if (std::abs(terms[i] * std::pow(x, p) - ref) > 1e-9 * ref) {
                    c.certificate += " contradicted on horizon";
                    return c;
                }
            }
            if (p > 1) {
                c.state = TailClosure::State::Converges;
                c.bound = t_last * last_index / (p - 1);
            } else {
                c.state = TailClosure::State::Diverges;
            }
            return c;
        }
        default: c.certificate = "none"; return c;
    }
}

Verdict close_series(const std::string& predicate, long double partial, const TailClosure& tail, double tau,
                     double t_last) {
    Verdict v;
    v.predicate = predicate;
    v.tau = tau;
    v.witness["partial_sum"] = static_cast<double>(partial);
    v.witness["last_term"] = t_last;
    v.note = tail.certificate;
    if (tail.state == TailClosure::State::Converges) {
        v.witness["tail_bound"] = tail.bound;
        v.Q = tail.bound;
        v.value = tail.bound <= tau ? VerdictValue::Holds : VerdictValue::Inconclusive;
        if (v.value == VerdictValue::Inconclusive) v.note += "; tail bound above tau, extend the horizon";
    } else if (tail.state == TailClosure::State::Diverges) {
        v.Q = INFINITY;
        v.value = VerdictValue::Fails;
        v.note += "; terms do not decay summably";
    } else {
        v.Q = INFINITY;
        v.value = VerdictValue::Inconclusive;
    }
    return v;
}

}  // namespace

const char* verdict_name(VerdictValue v) {
    switch (v) {
        case VerdictValue::Holds: return "holds";
        case VerdictValue::Fails: return "fails";
        case VerdictValue::Inconclusive: return "inconclusive";
    }
    return "?";
}

VerdictValue conjunction(VerdictValue a, VerdictValue b) {
    if (a == VerdictValue::Fails || b == VerdictValue::Fails) return VerdictValue::Fails;
    if (a == VerdictValue::Holds && b == VerdictValue::Holds) return VerdictValue::Holds;
    return VerdictValue::Inconclusive;
}

Verdict hcs_shift(const WeightSequence& w, std::int64_t n_max, std::int64_t k_max, double tau, double lambda) {
    if (w.side() != Side::Unilateral) throw InvalidArgument("hcs_shift takes unilateral weights");
    if (n_max < 1 || k_max < 1) throw InvalidArgument("nMax and kMax must be >= 1");
    if (!(tau > 0)) throw InvalidArgument("tau must be positive");
    std::vector<long double> prefix(static_cast<std::size_t>(n_max + k_max + 1), 0.0L);
    for (std::int64_t i = 1; i <= n_max + k_max; ++i)
        prefix[static_cast<std::size_t>(i)] = prefix[static_cast<std::size_t>(i - 1)] + w.log_abs(i, lambda);

    Verdict v;
    v.predicate = "hcs_shift";
    v.tau = tau;
    v.horizon["nMax"] = static_cast<double>(n_max);
    v.horizon["kMax"] = static_cast<double>(k_max);
    const long double log_bar = std::log1p(static_cast<long double>(tau));
    long double best_log = -INFINITY;
    std::int64_t best_n = 1, best_k = 0;
    bool interior_failure = false;
    for (std::int64_t n = 1; n <= n_max; ++n) {
        long double lo = INFINITY;
        std::int64_t arg = 0;
        for (std::int64_t k = 0; k <= k_max; ++k) {
            long double val = prefix[static_cast<std::size_t>(k + n)] - prefix[static_cast<std::size_t>(k)];
            // near-ties keep the smallest k so rounding drift cannot push the minimizer to k_max
            if (k == 0 || val < lo - 1e-12L * (std::fabs(lo) + 1)) {
                lo = val;
                arg = k;
            }
        }
        v.profile.push_back(static_cast<double>(std::exp(lo)));
        if (lo > log_bar && arg < k_max) interior_failure = true;
        if (lo > best_log) {
            best_log = lo;
            best_n = n;
            best_k = arg;
        }
    }
    v.Q = static_cast<double>(std::exp(best_log));
    v.witness["argmax_n"] = static_cast<double>(best_n);
    v.witness["argmin_k"] = static_cast<double>(best_k);
    if (best_log <= log_bar) {
        v.value = VerdictValue::Holds;
    } else if (interior_failure) {
        v.value = VerdictValue::Fails;
        v.note = "product infimum exceeds 1+tau at an interior k";
    } else {
        v.value = VerdictValue::Inconclusive;
        v.note = "minimizer sits at the kMax boundary";
    }
    return v;
}

double ufhc_term(const WeightSequence& w, double p, std::int64_t n, double lambda) {
    positive_exponent(p);
    long double s = 0;
    for (std::int64_t i = 1; i <= n; ++i) s += w.log_abs(i, lambda);
    return static_cast<double>(std::exp(-static_cast<long double>(p) * s));
}

Verdict ufhc_shift(const WeightSequence& w, double p, std::int64_t n_max, const TailCertificate& tail, double tau,
                   double lambda) {
    positive_exponent(p);
    if (w.side() != Side::Unilateral) throw InvalidArgument("ufhc_shift takes unilateral weights");
    if (n_max < 2) throw InvalidArgument("nMax must be >= 2");
    std::vector<double> terms;
    terms.reserve(static_cast<std::size_t>(n_max));
    long double log_prod = 0, partial = 0;
    for (std::int64_t n = 1; n <= n_max; ++n) {
        log_prod += w.log_abs(n, lambda);
        double t = static_cast<double>(std::exp(-static_cast<long double>(p) * log_prod));
        terms.push_back(t);
        partial += t;
    }
    const double t_last = terms.back();
    const double N = static_cast<double>(n_max);

    TailClosure closure;
    if (tail.kind == TailCertificate::Kind::Auto) {
        const WeightRule& r = w.positive();
        if (w.override_extent() > n_max) {
            closure.certificate = "table overrides extend past the horizon";
        } else {
            switch (r.kind()) {
                case WeightRule::Kind::Const:
                    closure = geometric_tail(t_last, std::pow(std::abs(r.c()), -p), "geometric(const)");
                    break;
                case WeightRule::Kind::Ratio:
                    // 1/(w_1...w_n) = c/(n+1): tail <= t_N (N+1)/(p-1)
                    closure.certificate = "telescoping(ratio)";
                    if (p > 1) {
                        closure.state = TailClosure::State::Converges;
                        closure.bound = t_last * (N + 1) / (p - 1);
                    } else {
                        closure.state = TailClosure::State::Diverges;
                    }
                    break;
                case WeightRule::Kind::OnePlusLam:
                case WeightRule::Kind::OnePlusFix: {
                    const double l = r.kind() == WeightRule::Kind::OnePlusLam ? lambda : r.c();
                    // t_n / t_N <= ((N+1+l)/(n+1+l))^{lp} and >= (N/n)^{lp}
                    closure.certificate = "p-series(one_plus, s=" + std::to_string(l * p) + ")";
                    if (l > 0 && l * p > 1) {
                        closure.state = TailClosure::State::Converges;
                        closure.bound = t_last * (N + 1 + l) / (l * p - 1);
                    } else if (l > -1) {
                        closure.state = TailClosure::State::Diverges;
                    }
                    break;
                }
                case WeightRule::Kind::Linear:
                    closure = geometric_tail(t_last, std::pow(N + 2, -p), "geometric(n)");
                    break;
                case WeightRule::Kind::Hash:
                    if (r.lo() > 1) closure = geometric_tail(t_last, std::pow(r.lo(), -p), "geometric(hash)");
                    else if (r.hi() <= 1) closure = geometric_tail(t_last, 1.0, "geometric(hash)");
                    else closure.certificate = "hash weights straddle 1";
                    break;
            }
        }
    } else {
        closure = supplied_tail(tail, terms, 1, 1.0, p);
    }
    Verdict v = close_series("ufhc_shift", partial, closure, tau, t_last);
    v.horizon["nMax"] = N;
    return v;
}

Verdict ufhcs_shift(const WeightSequence& w, double p, const UfhcsOptions& opt) {
    Verdict h = hcs_shift(w, opt.hcs_n_max, opt.hcs_k_max, opt.tau, opt.lambda);
    Verdict u = ufhc_shift(w, p, opt.sum_n_max, opt.tail, opt.tau, opt.lambda);
    Verdict v;
    v.predicate = "ufhcs_shift";
    v.tau = opt.tau;
    v.value = conjunction(h.value, u.value);
    v.Q = h.Q;
    v.horizon = {{"nMax", static_cast<double>(opt.hcs_n_max)},
                 {"kMax", static_cast<double>(opt.hcs_k_max)},
                 {"sumNMax", static_cast<double>(opt.sum_n_max)}};
    v.note = std::string("hcs ") + verdict_name(h.value) + ", ufhc " + verdict_name(u.value);
    v.parts = {h, u};
    return v;
}

Verdict fhcs_bilateral(const WeightSequence& w, double p, std::int64_t m_max, const TailCertificate& tail,
                       double tau) {
    positive_exponent(p);
    if (w.side() != Side::Bilateral) throw InvalidArgument("fhcs_bilateral takes bilateral weights");
    if (m_max < 2) throw InvalidArgument("mMax must be >= 2");
    std::vector<double> terms;
    terms.reserve(static_cast<std::size_t>(m_max + 1));
    long double log_prod = 0, partial = 0;
    for (std::int64_t m = 0; m <= m_max; ++m) {
        log_prod += w.log_abs(-m);
        double t = static_cast<double>(std::exp(static_cast<long double>(p) * log_prod));
        terms.push_back(t);
        partial += t;
    }
    const double t_last = terms.back();
    TailClosure closure;
    if (tail.kind == TailCertificate::Kind::Auto) {
        const WeightRule& r = w.negative();
        if (w.override_extent() > m_max) {
            closure.certificate = "table overrides extend past the horizon";
        } else if (r.kind() == WeightRule::Kind::Const) {
            closure = geometric_tail(t_last, std::pow(std::abs(r.c()), p), "geometric(const)");
        } else if (r.kind() == WeightRule::Kind::Hash) {
            if (r.hi() < 1) closure = geometric_tail(t_last, std::pow(r.hi(), p), "geometric(hash)");
            else if (r.lo() >= 1) closure = geometric_tail(t_last, 1.0, "geometric(hash)");
            else closure.certificate = "hash weights straddle 1";
        } else {
            closure.certificate = "no registered tail class for " + r.token();
        }
    } else {
        closure = supplied_tail(tail, terms, 0, 1.0, p);
    }
    Verdict v = close_series("fhcs_bilateral", partial, closure, tau, t_last);
    v.horizon["mMax"] = static_cast<double>(m_max);
    return v;
}

Verdict kothe_limsup_test(const OperatorFamily& fam, const Interval& k_set, const KotheLimsupOptions& opt) {
    if (opt.n_max < 0 || opt.k_max < 1) throw InvalidArgument("nMax must be >= 0 and kMax >= 1");
    if (!(opt.C > 0)) throw InvalidArgument("C must be positive");
    const std::int64_t k_min = opt.k_min >= 0 ? opt.k_min : opt.k_max / 10;
    if (k_min > opt.k_max) throw InvalidArgument("kMin exceeds kMax");
    const SeminormSpec num = fam.space().seminorm(opt.j);
    const SeminormSpec den = fam.space().seminorm(opt.m);
    Verdict v;
    v.predicate = "kothe_limsup_test";
    v.tau = opt.tau;
    v.horizon = {{"nMax", static_cast<double>(opt.n_max)},
                 {"kMin", static_cast<double>(k_min)},
                 {"kMax", static_cast<double>(opt.k_max)}};
    bool all_nonincreasing = true;
    bool failing_nondecreasing = false;
    double worst = 0;
    const std::int64_t n_first = opt.n_max == 0 ? 0 : 1;
    for (std::int64_t n = n_first; n <= opt.n_max; ++n) {
        double prev = INFINITY;
        bool nonincreasing = true, nondecreasing = true;
        double last = 0;
        for (std::int64_t k = k_min; k <= opt.k_max; ++k) {
            double r = family_bound_on_basis(fam, k_set, n, k, num, den) / opt.C;
            if (std::isfinite(prev)) {
                if (r > prev * (1 + 1e-12)) nonincreasing = false;
                if (r < prev * (1 - 1e-12)) nondecreasing = false;
            }
            prev = r;
            last = r;
        }
        v.profile.push_back(last);
        worst = std::max(worst, last);
        all_nonincreasing = all_nonincreasing && nonincreasing;
        if (last > 1 + opt.tau && nondecreasing) failing_nondecreasing = true;
    }
    v.Q = worst;
    v.witness["ratio_at_kmax"] = worst;
    v.witness["tail_nonincreasing"] = all_nonincreasing ? 1 : 0;
    if (worst <= 1 + opt.tau && all_nonincreasing) {
        v.value = VerdictValue::Holds;
    } else if (failing_nondecreasing) {
        v.value = VerdictValue::Fails;
        v.note = "ratio above 1+tau with a nondecreasing tail";
    } else {
        v.value = VerdictValue::Inconclusive;
        v.note = all_nonincreasing ? "ratio above 1+tau but still decreasing" : "tail is not monotone";
    }
    return v;
}

double DeltaRule::at(std::int64_t k) const {
    switch (kind) {
        case Kind::IterateLog: return a * scale / static_cast<double>(std::max<std::int64_t>(k, 1));
        case Kind::DirectLog:
            return scale / std::log1p(static_cast<double>(std::max<std::int64_t>(k, 1)) / a);
        case Kind::Constant: return scale;
    }
    return 0;
}

std::string DeltaRule::formula() const {
    switch (kind) {
        case Kind::IterateLog: return "a*log(1+eps/q(y))/max(k,1)";
        case Kind::DirectLog: return "log(1+eps/q(y))/log(1+max(k,1)/a)";
        case Kind::Constant: return "b-a";
    }
    return "?";
}

ChcEvidence chc_evidence(const OperatorFamily& fam, const Interval& k_set, const SeqVector& y, double epsilon,
                         const ChcOptions& opt) {
    if (!fam.has_right_inverse()) throw NotSupported("family " + fam.name() + " has no right inverse");
    if (fam.space().side != Side::Unilateral) throw NotSupported("CHC evidence is implemented for unilateral shifts");
    if (fam.envelope() != OperatorFamily::Envelope::Monotone)
        throw NotSupported("CHC evidence needs a family with a monotone parameter envelope");
    if (fam.action() == OperatorFamily::Action::Iterate && fam.weights().depends_on_lambda())
        throw NotSupported("iterate families need parameter-free weights");
    if (!(epsilon > 0)) throw InvalidArgument("epsilon must be positive");
    if (!k_set.bounded() || k_set.lo > k_set.hi) throw InvalidArgument("K must be a compact interval");
    if (!fam.range().contains(k_set.lo) || !fam.range().contains(k_set.hi))
        throw ParameterOutOfRange("K = " + k_set.str() + " must lie inside " + fam.range().str());
    if (y.empty()) throw InvalidArgument("target vector must be nonzero");
    if (opt.truncation < 16) throw InvalidArgument("truncation must be >= 16");

    ChcEvidence ev;
    ev.K = Interval::closed(k_set.lo, k_set.hi);
    ev.epsilon = epsilon;
    ev.seminorm = fam.default_seminorm();
    ev.support_max = y.max_index();
    ev.tuples = opt.tuples;
    ev.tuple_length = opt.tuple_length;
    ev.seed = opt.seed;
    const double a = k_set.lo, b = k_set.hi;
    const SeminormSpec& q = ev.seminorm;

    // b_k = q(S_{k,a} y) dominates the terms of (2) and (5) under the monotone envelope
    const std::size_t K = static_cast<std::size_t>(opt.truncation);
    ev.term_bounds.resize(K);
    SeqVector s = y;
    for (std::size_t k = 0; k < K; ++k) {
        if (k > 0) s = fam.right_inverse(s, 1, a);
        ev.term_bounds[k] = q.eval(s).value;
    }

    // extrapolate past the truncation from the last quarter
    const std::size_t from = 3 * K / 4;
    double ratio = 0, expo = INFINITY;
    for (std::size_t k = from; k + 1 < K; ++k) {
        double b0 = ev.term_bounds[k], b1 = ev.term_bounds[k + 1];
        if (b0 <= 0) continue;
        ratio = std::max(ratio, b1 / b0);
        expo = std::min(expo, std::log(b0 / b1) / std::log(static_cast<double>(k + 1) / static_cast<double>(k)));
    }
    const double b_last = ev.term_bounds[K - 1];
    double beyond = INFINITY;
    if (b_last == 0) {
        beyond = 0;
        ev.extrapolation = "zero";
    } else {
        if (ratio < 1) {
            beyond = b_last * ratio / (1 - ratio);
            ev.extrapolation = "geometric";
        }
        if (expo > 1) {
            double pow_bound = b_last * static_cast<double>(K - 1) / (expo - 1);
            if (pow_bound < beyond) {
                beyond = pow_bound;
                ev.extrapolation = "power";
            }
        }
        if (!std::isfinite(beyond)) ev.extrapolation = "none";
    }
    ev.beyond_truncation = beyond;

    std::vector<long double> suffix(K + 1, 0.0L);
    suffix[K] = beyond;
    for (std::size_t k = K; k-- > 0;) suffix[k] = suffix[k + 1] + ev.term_bounds[k];

    // condition (1) vanishes once C exceeds the support: B^k y = 0 for k > max support
    const std::int64_t c_min = std::max<std::int64_t>(1, ev.support_max + 1);
    ev.C = -1;
    for (std::int64_t c = c_min; c < opt.truncation; ++c) {
        if (suffix[static_cast<std::size_t>(c)] < epsilon) {
            ev.C = c;
            break;
        }
    }
    if (ev.C < 0)
        throw CapExceeded("tail bound does not drop below eps within truncation " + std::to_string(opt.truncation));
    ev.tail1 = 0;
    ev.tail2 = static_cast<double>(suffix[static_cast<std::size_t>(ev.C)]);
    ev.tail5 = ev.tail2;

    // delta-sequence for the hitting condition
    const double qy = q.eval(y).value;
    if (fam.action() == OperatorFamily::Action::Iterate) {
        ev.delta = {DeltaRule::Kind::IterateLog, a, std::log1p(epsilon / qy)};
    } else if (fam.weights().depends_on_lambda()) {
        ev.delta = {DeltaRule::Kind::DirectLog, a, std::log1p(epsilon / qy)};
    } else {
        ev.delta = {DeltaRule::Kind::Constant, a, b > a ? b - a : 1.0};
    }
    double cmin = INFINITY;
    for (std::int64_t k = 1; k <= opt.truncation; ++k)
        cmin = std::min(cmin, static_cast<double>(k) * ev.delta.at(k));
    ev.divergence_c = cmin;

    std::vector<std::int64_t> ks;
    for (std::int64_t k = 1; k < opt.truncation; k *= 2) ks.push_back(k);
    ks.push_back(ev.C);
    ks.push_back(ev.C + 1);
    ks.push_back(2 * ev.C);
    const int g = std::max(2, opt.delta_grid);
    for (std::int64_t k : ks) {
        for (int i = 0; i < g; ++i) {
            const double mu = a + (b - a) * i / (g - 1);
            for (double t : {0.25, 0.5, 0.75, 1.0}) {
                const double lam = mu + t * ev.delta.at(k) * (1 - 1e-12);
                if (lam > b) continue;
                const double err = q.eval(fam.round_trip(y, k, lam, mu) - y).value / epsilon;
                ev.delta_worst = std::max(ev.delta_worst, err);
                ++ev.delta_checks;
            }
        }
    }

    // sampled monotone tuples; evidence for the uniformity over all tuples
    std::mt19937_64 gen(opt.seed);
    for (int t = 0; t < opt.tuples; ++t) {
        const int len = 1 + static_cast<int>(gen() % static_cast<std::uint64_t>(std::max(1, opt.tuple_length)));
        std::vector<double> mus(static_cast<std::size_t>(len));
        for (double& m : mus) m = a + (b - a) * uniform01(gen);
        std::sort(mus.begin(), mus.end());
        const std::int64_t l = static_cast<std::int64_t>(gen() % 17);

        const double lam2 = a + (mus.front() - a) * uniform01(gen);
        SeqVector sum2(Side::Unilateral), sum5(Side::Unilateral);
        for (int i = 0; i < len; ++i) {
            const std::int64_t k = ev.C + i;
            sum2 += fam.apply(fam.right_inverse(y, l + k, mus[static_cast<std::size_t>(i)]), l, lam2);
            sum5 += fam.right_inverse(y, k, mus[static_cast<std::size_t>(i)]);
        }
        ev.tuple_worst2 = std::max(ev.tuple_worst2, q.eval(sum2).value);
        ev.tuple_worst5 = std::max(ev.tuple_worst5, q.eval(sum5).value);

        // (1): lambda >= mu_0 >= mu_1 >= ..., terms T_{l,lambda} S_{l-k,mu_k} y for k in F ∩ [0,l]
        const double lam1 = mus.back() + (b - mus.back()) * uniform01(gen);
        const std::int64_t l1 = ev.C + static_cast<std::int64_t>(gen() % static_cast<std::uint64_t>(len));
        SeqVector sum1(Side::Unilateral);
        for (int i = 0; i < len; ++i) {
            const std::int64_t k = ev.C + i;
            if (k > l1) break;
            const double mu = mus[static_cast<std::size_t>(len - 1 - i)];
            sum1 += fam.apply(fam.right_inverse(y, l1 - k, mu), l1, lam1);
        }
        ev.tuple_worst1 = std::max(ev.tuple_worst1, q.eval(sum1).value);
    }
    return ev;
}

namespace {

Scalar horner(const std::vector<double>& c, Scalar z) {
    Scalar acc = 0;
    for (std::size_t i = c.size(); i-- > 0;) acc = acc * z + c[i];
    return acc;
}

// infimum radius r with |lambda P(z)| > 1 on |z| >= r, by bisection on sampled circles
double radius_for(const std::vector<double>& c, double lambda, const RPOptions& opt) {
    const std::size_t d = c.size() - 1;
    double rest = 0;
    for (std::size_t i = 0; i < d; ++i) rest += std::abs(c[i]);
    const double lead = std::abs(c[d]);
    // beyond r_star, |lambda P(z)| >= lambda (lead |z| - rest) |z|^{d-1} >= 2
    const double r_star = std::max(1.0, (2.0 / lambda + rest) / lead);
    auto feasible = [&](double r) {
        for (int i = 0; i <= opt.radii; ++i) {
            const double rho = r + (r_star - r) * i / opt.radii;
            for (int t = 0; t < opt.angles; ++t) {
                const double th = 2 * M_PI * t / opt.angles;
                if (std::abs(lambda * horner(c, std::polar(rho, th))) <= 1) return false;
            }
        }
        return true;
    };
    if (feasible(0)) return 0;
    double lo = 0, hi = r_star;
    while (hi - lo > opt.tol) {
        const double mid = 0.5 * (lo + hi);
        if (feasible(mid)) hi = mid; else lo = mid;
    }
    return hi;
}

}  // namespace

RPResult r_p_bisection(const std::vector<double>& coeffs_in, const Interval& range, const RPOptions& opt) {
    std::vector<double> c = coeffs_in;
    while (!c.empty() && c.back() == 0) c.pop_back();
    if (c.size() < 2) throw InvalidArgument("r_P needs a nonconstant polynomial");
    if (!range.bounded())
        throw NotSupported("grid+bisection refuses unbounded parameter intervals; use a registered closed form");
    if (range.lo < 0 || range.lo > range.hi) throw InvalidArgument("parameter interval must satisfy 0 <= a <= b");
    const int g = std::max(1, opt.grid);
    double best = INFINITY;
    for (int i = 0; i < g; ++i) {
        const double lam = g == 1 ? range.hi : range.lo + (range.hi - range.lo) * i / (g - 1);
        if (lam <= 0) continue;
        best = std::min(best, radius_for(c, lam, opt));
    }
    RPResult r;
    r.value = best;
    r.method = "grid+bisection";
    r.grid = g;
    std::ostringstream os;
    os << "lambda*P(z), deg " << (c.size() - 1) << ", lambda in " << range.str();
    r.descriptor = os.str();
    return r;
}

RPResult r_p(const RPShape& shape, const RPOptions& opt) {
    if (shape.range.lo < 0) throw InvalidArgument("parameter interval must lie in [0, inf)");
    std::vector<double> coeffs;
    if (shape.kind == RPShape::Kind::Scalar) {
        coeffs = {0, 1};
    } else if (shape.kind == RPShape::Kind::Monomial) {
        if (shape.degree < 1) throw InvalidArgument("monomial degree must be >= 1");
        coeffs.assign(static_cast<std::size_t>(shape.degree) + 1, 0.0);
        coeffs.back() = 1;
    } else {
        return r_p_bisection(shape.coeffs, shape.range, opt);
    }
    if (opt.force_bisection) return r_p_bisection(coeffs, shape.range, opt);
    const double b = shape.range.hi;
    RPResult r;
    r.method = "closed-form";
    if (shape.kind == RPShape::Kind::Scalar) {
        r.value = std::isfinite(b) ? 1 / b : 0;
        r.descriptor = "scalar lambda*id, lambda in " + shape.range.str();
    } else {
        r.value = std::isfinite(b) ? std::pow(b, -1.0 / shape.degree) : 0;
        r.descriptor = "monomial lambda*z^" + std::to_string(shape.degree) + ", lambda in " + shape.range.str();
    }
    return r;
}

}  // namespace hyperlab
