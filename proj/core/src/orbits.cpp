#include "hyperlab/orbits.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "hyperlab/errors.hpp"

namespace hyperlab {

OrbitTrace orbit(const OperatorFamily& fam, double lambda, const SeqVector& x, std::int64_t N,
                 const OrbitOptions& opt) {
    if (N < 0) throw InvalidArgument("orbit horizon must be >= 0");
    OrbitTrace t;
    t.family = fam.name();
    t.lambda = lambda;
    t.x = x;
    t.N = N;
    t.seminorm = opt.seminorm ? *opt.seminorm : fam.default_seminorm();
    t.seminorms.reserve(static_cast<std::size_t>(N + 1));
    const double target_norm = opt.target ? t.seminorm.eval(*opt.target).value : 0;
    SeqVector v = x;
    for (std::int64_t n = 0; n <= N; ++n) {
        if (v.size() > opt.support_cap)
            throw CapExceeded("orbit support exceeds " + std::to_string(opt.support_cap) + " coordinates");
        if (v.empty()) {
            // the orbit stays at zero from here on
            t.seminorms.resize(static_cast<std::size_t>(N + 1), 0.0);
            if (opt.target) t.distances.resize(static_cast<std::size_t>(N + 1), target_norm);
            break;
        }
        t.seminorms.push_back(t.seminorm.eval(v).value);
        if (opt.target) t.distances.push_back(t.seminorm.eval(v - *opt.target).value);
        if (n < N) v = fam.step(v, lambda);
    }
    return t;
}

ReturnResult return_density(const OperatorFamily& fam, double lambda, const SeqVector& x, const SeqVector& y,
                            double epsilon, std::int64_t N, const std::optional<SeminormSpec>& seminorm) {
    if (!(epsilon > 0)) throw InvalidArgument("epsilon must be positive");
    OrbitOptions o;
    o.seminorm = seminorm;
    o.target = y;
    ReturnResult r;
    r.trace = orbit(fam, lambda, x, N, o);
    r.set.y = y;
    r.set.epsilon = epsilon;
    r.set.seminorm = r.trace.seminorm;
    r.set.N = N;
    for (std::int64_t n = 0; n <= N; ++n)
        if (r.trace.distances[static_cast<std::size_t>(n)] < epsilon) r.set.hits.push_back(n);
    r.density = density(r.set.hits, N);
    return r;
}

SweepResult hitting_sweep(const OperatorFamily& fam, const ChcBlockReport& report, int grid) {
    if (grid < 1) throw InvalidArgument("grid must have at least one point");
    SweepResult out;
    const double a = report.K.lo, b = report.K.hi;
    const double bar = 3 * report.epsilon;
    for (int i = 0; i < grid; ++i) {
        const double lam = grid == 1 ? a : a + (b - a) * i / (grid - 1);
        HitRecord h;
        h.lambda = lam;
        double best = INFINITY;
        SeqVector v = fam.apply(report.x, report.N0, lam);
        for (std::int64_t k = report.N0; k <= report.N1; ++k) {
            const double err = report.seminorm.eval(v - report.y).value;
            best = std::min(best, err);
            if (err < bar) {
                h.k = k;
                h.error = err;
                break;
            }
            if (k < report.N1) v = fam.step(v, lam);
        }
        if (h.k < 0) {
            h.error = best;
            ++out.violations;
        }
        out.max_error = std::max(out.max_error, h.error);
        out.rows.push_back(h);
    }
    return out;
}

DecaySweepResult decay_sweep(const WeightSequence& w, const DecayBasis& basis, const DecaySweepOptions& opt) {
    if (basis.indices.empty()) throw InvalidArgument("decay sweep needs a nonempty basis");
    if (w.side() != Side::Bilateral) throw InvalidArgument("decay sweep takes bilateral weights");
    const std::size_t J = basis.indices.size();
    const double p = opt.p;

    // prod_{v=0}^{n-1} |w_{-k_j-v}|^p for each j and n = 0..N
    std::vector<std::vector<double>> factor(J, std::vector<double>(static_cast<std::size_t>(opt.N + 1)));
    for (std::size_t j = 0; j < J; ++j) {
        long double acc = 0;
        for (std::int64_t n = 0; n <= opt.N; ++n) {
            factor[j][static_cast<std::size_t>(n)] = static_cast<double>(std::exp(p * acc));
            acc += w.log_abs(-basis.indices[j] - n);
        }
    }

    DecaySweepResult out;
    out.max_norm.assign(static_cast<std::size_t>(opt.N + 1), 0.0);
    out.worst_margin = -INFINITY;
    std::mt19937_64 gen(opt.seed);
    for (std::int64_t s = 0; s < opt.samples; ++s) {
        std::vector<double> mag(J, 0.0);  // |a_j|^p
        SeqVector x(Side::Bilateral);
        if (!opt.zero_coefficients) {
            std::vector<double> a(J);
            double total = 0;
            for (double& v : a) {
                v = 2 * (static_cast<double>(gen() >> 11) * 0x1.0p-53) - 1;
                total += std::pow(std::abs(v), p);
            }
            const double scale = std::pow(total, -1 / p);
            for (std::size_t j = 0; j < J; ++j) {
                a[j] *= scale;
                mag[j] = std::pow(std::abs(a[j]), p);
                x.set(-basis.indices[j], a[j]);
            }
        }
        for (std::int64_t n = 0; n <= opt.N; ++n) {
            const SeminormValue nv = lp_norm(apply_shift_power(w, x, n), p);
            out.max_norm[static_cast<std::size_t>(n)] = std::max(out.max_norm[static_cast<std::size_t>(n)], nv.value);
            const double lhs = std::pow(nv.value, p);
            // rhs(J) = sum_{j<=J} factor_j^p |a_j|^p + sum_{j>J} |a_j|^p
            double tail = 0;
            for (double m : mag) tail += m;
            double head = 0;
            for (std::size_t cut = 0; cut <= J; ++cut) {
                if (cut > 0) {
                    head += factor[cut - 1][static_cast<std::size_t>(n)] * mag[cut - 1];
                    tail -= mag[cut - 1];
                }
                const double rhs = head + std::max(tail, 0.0);
                const double margin = lhs - rhs;
                out.worst_margin = std::max(out.worst_margin, margin);
                ++out.checks;
                if (lhs > rhs * (1 + 1e-12) + 1e-300) ++out.violations;
            }
        }
        ++out.samples;
    }
    return out;
}

std::vector<ResidualRow> decay_sweep(const std::vector<FamilyOnCompact>& families, const NicemnResult& basis,
                                     std::int64_t N, int grid) {
    if (basis.x.empty()) throw InvalidArgument("decay sweep needs a nonempty basis");
    const int g = std::max(1, grid);
    std::vector<ResidualRow> rows;
    for (std::size_t i = 0; i < basis.x.size(); ++i) {
        for (const auto& win : basis.windows) {
            for (std::int64_t k = win.first; k <= std::min(win.second, N); ++k) {
                ResidualRow r;
                r.i = static_cast<int>(i) + 1;
                r.k = k;
                for (const auto& fk : families) {
                    const SeminormSpec q = fk.family.default_seminorm();
                    for (int t = 0; t < g; ++t) {
                        const double lam = g == 1 ? fk.K.lo : fk.K.lo + (fk.K.hi - fk.K.lo) * t / (g - 1);
                        r.residual = std::max(r.residual, q.eval(fk.family.apply(basis.x[i], k, lam)).value);
                    }
                }
                rows.push_back(r);
            }
        }
    }
    return rows;
}

}  // namespace hyperlab
