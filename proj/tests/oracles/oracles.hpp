#pragma once

// Brute-force reference computations used to cross-check the library.
// Dense arrays, naive loops, no shared code with core.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <utility>
#include <vector>

namespace oracle {

// #(A ∩ [0,m]) / (m+1) as a (num, den) pair, for every m in [0, N], by direct membership counting.
inline std::vector<std::pair<std::int64_t, std::int64_t>> prefix_quotients(const std::vector<std::int64_t>& set,
                                                                           std::int64_t N) {
    std::vector<char> in(static_cast<std::size_t>(N + 1), 0);
    for (auto v : set)
        if (v >= 0 && v <= N) in[static_cast<std::size_t>(v)] = 1;
    std::vector<std::pair<std::int64_t, std::int64_t>> out;
    std::int64_t c = 0;
    for (std::int64_t m = 0; m <= N; ++m) {
        c += in[static_cast<std::size_t>(m)];
        out.emplace_back(c, m + 1);
    }
    return out;
}

inline double window_min(const std::vector<std::int64_t>& set, std::int64_t N) {
    auto q = prefix_quotients(set, N);
    double best = 2;
    for (std::int64_t m = N / 2; m <= N; ++m)
        best = std::min(best, static_cast<double>(q[m].first) / static_cast<double>(q[m].second));
    return best;
}

inline double window_max(const std::vector<std::int64_t>& set, std::int64_t N) {
    auto q = prefix_quotients(set, N);
    double best = -1;
    for (std::int64_t m = N / 2; m <= N; ++m)
        best = std::max(best, static_cast<double>(q[m].first) / static_cast<double>(q[m].second));
    return best;
}

// Least phi with (phi+1)/n_{k+phi} >= (p/q)(1 - 1/k), scanning phi = 0, 1, ... in long double
// and confirming each candidate in exact integer arithmetic.
inline std::int64_t least_phi(const std::function<std::int64_t(std::int64_t)>& n, std::int64_t p, std::int64_t q,
                              std::int64_t k, std::int64_t limit) {
    for (std::int64_t phi = 0; phi <= limit; ++phi) {
        const long double lhs = static_cast<long double>(phi + 1) / static_cast<long double>(n(k + phi));
        const long double rhs = static_cast<long double>(p) / q * (1.0L - 1.0L / k);
        if (lhs + 1e-15L < rhs) continue;
        // (phi+1) * k * q >= p * (k-1) * n_{k+phi}
        const long double a = static_cast<long double>(phi + 1) * k * q;
        const long double b = static_cast<long double>(p) * (k - 1) * n(k + phi);
        if (a >= b) return phi;
    }
    return -1;
}

using Dense = std::vector<std::complex<double>>;  // unilateral coordinates 0..size-1

// B_w^n by repeated single steps on a dense array; w(i) is the weight at index i >= 1.
inline Dense shift_power(const std::function<double(std::int64_t)>& w, Dense x, std::int64_t n) {
    for (std::int64_t s = 0; s < n; ++s) {
        Dense y(x.size(), 0.0);
        for (std::size_t i = 1; i < x.size(); ++i) y[i - 1] = w(static_cast<std::int64_t>(i)) * x[i];
        x = y;
    }
    return x;
}

inline double lp(const Dense& x, double p) {
    double s = 0;
    for (auto v : x) s += std::pow(std::abs(v), p);
    return std::pow(s, 1 / p);
}

// p_j(x) = (sum |x_k|^p j^{kp})^{1/p} for the ENTIRE matrix a_{j,k} = j^k
inline double entire_seminorm(const Dense& x, int j, double p) {
    long double s = 0;
    for (std::size_t k = 0; k < x.size(); ++k) s += std::pow(std::abs(x[k]) * std::pow((long double)j, (long double)k), p);
    return static_cast<double>(std::pow(s, 1.0L / p));
}

// min over k <= kMax of prod_{v=1}^n w_{k+v}, by direct multiplication
inline double min_block_product(const std::function<double(std::int64_t)>& w, std::int64_t n, std::int64_t kmax) {
    double best = INFINITY;
    for (std::int64_t k = 0; k <= kmax; ++k) {
        long double p = 1;
        for (std::int64_t v = 1; v <= n; ++v) p *= w(k + v);
        best = std::min(best, static_cast<double>(p));
    }
    return best;
}

// products prod_{v=0}^n |w_{-k-v}| for n = 0..N on a bilateral weight function
inline std::vector<double> left_products(const std::function<double(std::int64_t)>& w, std::int64_t k, std::int64_t N) {
    std::vector<double> out;
    double p = 1;
    for (std::int64_t n = 0; n <= N; ++n) {
        p *= std::abs(w(-k - n));
        out.push_back(p);
    }
    return out;
}

}  // namespace oracle
