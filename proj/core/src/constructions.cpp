#include "hyperlab/constructions.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "hyperlab/errors.hpp"

namespace hyperlab {

ChcBlockReport chc_block_vector(const OperatorFamily& fam, const Interval& k_set, const SeqVector& y, double epsilon,
                                const ChcBlockOptions& opt) {
    if (opt.N0 < 0) throw InvalidArgument("N0 must be >= 0");
    if (opt.grid < 1) throw InvalidArgument("verification grid must have at least one point");
    const ChcEvidence ev = chc_evidence(fam, k_set, y, epsilon, opt.evidence);
    const double a = k_set.lo, b = k_set.hi;

    ChcBlockReport r;
    r.y = y;
    r.K = Interval::closed(a, b);
    r.epsilon = epsilon;
    r.seminorm = ev.seminorm;
    r.N0 = opt.N0;
    r.C = ev.C;
    r.delta_rule = ev.delta;

    // anchors at gap exactly C from max(C, N0); L is the first count whose deltas cover b - a
    const std::int64_t base = std::max(ev.C, opt.N0);
    r.ladder.push_back(a);
    double reach = 0;
    for (std::int64_t l = 1;; ++l) {
        if (l > opt.L_cap)
            throw IntervalTooWide("ladder needs more than " + std::to_string(opt.L_cap) +
                                  " rungs; choose a narrower K or a larger eps");
        const std::int64_t k = base + (l - 1) * ev.C;
        const double d = ev.delta.at(k);
        r.anchors.push_back(k);
        r.deltas.push_back(d);
        r.ladder.push_back(r.ladder.back() + d);
        reach += d;
        if (reach >= b - a) break;
    }
    const std::size_t L = r.anchors.size();
    r.N1 = r.anchors.back();

    r.x = SeqVector(y.side());
    for (std::size_t l = 0; l < L; ++l) {
        SeqVector term = fam.right_inverse(y, r.anchors[l], r.ladder[l]);
        if (term.size() < y.size())
            throw CapExceeded("block coefficient at anchor " + std::to_string(r.anchors[l]) +
                              " underflows double precision; choose a narrower K or a larger eps");
        r.x += term;
    }
    r.x_norm = r.seminorm.eval(r.x).value;

    // lambda in [lambda_s, lambda_{s+1}] is hit at k_{s+1}
    for (int i = 0; i < opt.grid; ++i) {
        const double lam = opt.grid == 1 ? a : a + (b - a) * i / (opt.grid - 1);
        std::size_t s = 0;
        while (s + 1 < L && r.ladder[s + 1] <= lam) ++s;
        HitRecord h;
        h.lambda = lam;
        h.k = r.anchors[s];
        h.error = r.seminorm.eval(fam.apply(r.x, h.k, lam) - y).value;
        r.max_error = std::max(r.max_error, h.error);
        r.per_lambda.push_back(h);
    }
    r.verified = r.x_norm < epsilon && r.max_error < 3 * epsilon;
    return r;
}

DecayBasis bilateral_decay_basis(const WeightSequence& w, std::int64_t count, std::int64_t k0, std::int64_t horizon,
                                 double p) {
    if (w.side() != Side::Bilateral) throw InvalidArgument("bilateral_decay_basis takes bilateral weights");
    if (count < 0 || k0 < 0) throw InvalidArgument("count and k0 must be >= 0");
    if (horizon < 2) throw InvalidArgument("horizon must be >= 2");
    const Verdict pre = fhcs_bilateral(w, p, std::max<std::int64_t>(horizon, w.override_extent() + 2));
    if (pre.value != VerdictValue::Holds)
        throw PreconditionFailed(std::string("fhcs_bilateral is ") + verdict_name(pre.value) + ": " + pre.note);

    DecayBasis basis;
    basis.horizon = horizon;
    // log prod_{v=0}^n |w_{-k-v}| for n = 0..horizon
    auto scan = [&](std::int64_t k) {
        std::vector<long double> logs(static_cast<std::size_t>(horizon + 1));
        long double acc = 0;
        for (std::int64_t n = 0; n <= horizon; ++n) {
            acc += w.log_abs(-k - n);
            logs[static_cast<std::size_t>(n)] = acc;
        }
        return logs;
    };
    std::int64_t candidate = k0;
    for (std::int64_t step = 0; step < count; ++step) {
        const auto logs = scan(candidate);
        std::int64_t max_f = -1;
        for (std::int64_t n = 0; n <= horizon; ++n)
            if (logs[static_cast<std::size_t>(n)] > 0) max_f = n;
        if (max_f > horizon / 2)
            throw ScanHorizonError("products above 1 persist to n = " + std::to_string(max_f) + " from k = " +
                                   std::to_string(candidate) + "; raise the horizon");
        const std::int64_t k = max_f < 0 ? candidate : candidate + max_f + 1;
        long double worst = -INFINITY;
        for (long double v : (k == candidate ? logs : scan(k))) worst = std::max(worst, v);
        basis.indices.push_back(k);
        basis.certificates.push_back(static_cast<double>(std::exp(worst)));
        basis.scan_max_f.push_back(max_f);
        candidate = k + 1;
    }
    return basis;
}

std::function<int(int, int)> parse_m_rule(const std::string& token) {
    if (token == "j") return [](int, int j) { return j; };
    if (token == "2j") return [](int, int j) { return 2 * j; };
    if (token == "nj") return [](int n, int j) { return n * j; };
    if (token.size() > 2 && token.compare(0, 2, "j+") == 0) {
        int c = 0;
        try {
            c = std::stoi(token.substr(2));
        } catch (const std::exception&) {
            throw ConfigError("bad m rule '" + token + "'");
        }
        if (c < 0) throw ConfigError("bad m rule '" + token + "'");
        return [c](int, int j) { return j + c; };
    }
    throw ConfigError("unknown m rule '" + token + "' (expected j, 2j, nj or j+c)");
}

MkBasis kothe_mk_basis(const OperatorFamily& fam, int count, const MkOptions& opt) {
    if (count < 0) throw InvalidArgument("count must be >= 0");
    if (opt.start_index < 0) throw InvalidArgument("start index must be >= 0");
    MkBasis out;
    out.description = "M_k = span{e_{n_l} : l >= k}";
    std::vector<Interval> ks;
    auto K = [&](int n) -> const Interval& {
        while (static_cast<int>(ks.size()) < n) {
            const int i = static_cast<int>(ks.size()) + 1;
            ks.push_back(opt.K ? opt.K(i) : Interval::closed(1.0 / i, i).clip_to_closure(fam.range()));
        }
        return ks[static_cast<std::size_t>(n - 1)];
    };
    std::int64_t next = opt.start_index;
    for (int l = 1; l <= count; ++l) {
        bool found = false;
        MkConstraint failing;
        std::vector<MkConstraint> rows;
        for (std::int64_t cand = next; cand <= opt.scan_cap; ++cand) {
            rows.clear();
            bool ok = true;
            for (int n = 1; n <= l && ok; ++n) {
                for (int j = 1; j <= l && ok; ++j) {
                    const int mi = opt.m(n, j);
                    const SeminormSpec num = fam.space().seminorm(j);
                    const SeminormSpec den = fam.space().seminorm(mi);
                    const double bound = 2 * opt.C(n, j);
                    for (int m = 1; m <= l; ++m) {
                        MkConstraint c{l, n, j, m, family_bound_on_basis(fam, K(n), m, cand, num, den), bound};
                        rows.push_back(c);
                        if (!(c.value <= bound)) {
                            ok = false;
                            failing = c;
                            break;
                        }
                    }
                }
            }
            if (ok) {
                out.indices.push_back(cand);
                out.table.insert(out.table.end(), rows.begin(), rows.end());
                next = cand + 1;
                found = true;
                break;
            }
        }
        if (!found)
            throw CapExceeded("no index up to " + std::to_string(opt.scan_cap) + " for l = " + std::to_string(l) +
                              "; failing (n,j,m) = (" + std::to_string(failing.n) + "," + std::to_string(failing.j) +
                              "," + std::to_string(failing.m) + ")");
    }
    return out;
}

namespace {

SeminormSpec rank_capped(const SpaceSpec& space, std::int64_t rank) {
    int r = static_cast<int>(std::min<std::int64_t>(rank, 1 << 20));
    if (space.kind == SpaceSpec::Kind::Kothe && space.matrix->max_j() > 0) r = std::min(r, space.matrix->max_j());
    return space.seminorm(std::max(r, 1));
}

// sup over families, parameters and steps k in [k_lo, k_hi] of q_rank(T_{k,lambda} v)
double orbit_sup(const std::vector<FamilyOnCompact>& families, const SeqVector& v, std::int64_t k_lo, std::int64_t k_hi,
                 std::int64_t rank) {
    if (v.empty()) return 0;
    double worst = 0;
    for (const auto& fk : families) {
        const SeminormSpec q = rank_capped(fk.family.space(), rank);
        for (double lam : sup_parameters(fk.family, fk.K)) {
            SeqVector t = fk.family.apply(v, k_lo, lam);
            for (std::int64_t k = k_lo; k <= k_hi && !t.empty(); ++k) {
                worst = std::max(worst, q.eval(t).value);
                if (k < k_hi) t = fk.family.step(t, lam);
            }
        }
    }
    return worst;
}

}  // namespace

NicemnResult nicemn_synthesize(const std::vector<FamilyOnCompact>& families, const std::vector<SeqVector>& u,
                               const DenseOracle& oracle, const NicemnOptions& opt) {
    if (families.empty()) throw InvalidArgument("nicemn needs at least one family");
    if (opt.truncation < 0) throw InvalidArgument("truncation must be >= 0");
    NicemnResult out;
    out.oracle = oracle.name();
    const SeminormSpec p1 = families.front().family.space().seminorm(1);
    std::set<std::int64_t> leading;
    for (const SeqVector& ui : u) {
        if (ui.empty()) throw InvalidArgument("basis vectors must be nonzero");
        const double n1 = p1.eval(ui).value;
        out.x.push_back(Scalar(1 / n1) * ui);
        if (!leading.insert(ui.max_index()).second)
            throw PreconditionFailed("basis vectors must have distinct leading indices");
    }
    const int count = static_cast<int>(u.size());
    auto phi = [&](std::int64_t k) -> std::int64_t { return opt.phi ? opt.phi->at(k) : 0; };

    std::int64_t k_prev = 1;
    for (int l = 1; l <= opt.truncation; ++l) {
        const std::int64_t R = k_prev + phi(k_prev);
        for (int i = 1; i <= count; ++i) {
            SeqVector& xi = out.x[static_cast<std::size_t>(i - 1)];
            const double small = std::ldexp(1.0, -(i + l + 2));
            const SeqVector d = oracle.perturb(i, l, xi, small);
            const double pf = rank_capped(families.front().family.space(), i).eval(d).value;
            out.bounds.push_back({l, i, "f", pf, small});
            if (!(pf < small))
                throw PreconditionFailed("oracle violates p_i(x_{i,l}) < 2^-(i+l+2) at i = " + std::to_string(i) +
                                         ", l = " + std::to_string(l));
            if (i <= R) {
                const double target = std::ldexp(1.0, -(i + l));
                const double f2 = orbit_sup(families, d, 0, R, R);
                out.bounds.push_back({l, i, "f2", f2, target});
                if (!(f2 < target))
                    throw PreconditionFailed("oracle violates sup q_R(T_k x_{i,l}) < 2^-(i+l) at i = " +
                                             std::to_string(i) + ", l = " + std::to_string(l));
            }
            xi += d;
        }
        // least k_l > R whose window keeps every partial sum below 2^-(i+l)
        bool found = false;
        for (std::int64_t k = R + 1; k <= opt.scan_cap; ++k) {
            const std::int64_t hi = k + phi(k);
            bool ok = true;
            std::vector<NicemnBound> rows;
            for (int i = 1; i <= count && ok; ++i) {
                const double target = std::ldexp(1.0, -(i + l));
                const double v = orbit_sup(families, out.x[static_cast<std::size_t>(i - 1)], k, hi, l);
                rows.push_back({l, i, "k", v, target});
                ok = v < target;
            }
            if (ok) {
                out.selected.push_back(k);
                out.windows.emplace_back(k, hi);
                out.bounds.insert(out.bounds.end(), rows.begin(), rows.end());
                k_prev = k;
                found = true;
                break;
            }
        }
        if (!found)
            throw CapExceeded("no k_l below " + std::to_string(opt.scan_cap) + " meets the decay bound at l = " +
                              std::to_string(l));
    }
    return out;
}

}  // namespace hyperlab
