#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

namespace hyperlab {

using Scalar = std::complex<double>;

enum class Side { Unilateral, Bilateral };

const char* side_name(Side s);

// Finitely supported vector; zero coordinates are never stored.
class SeqVector {
public:
    using Map = std::map<std::int64_t, Scalar>;

    explicit SeqVector(Side side = Side::Unilateral) : side_(side) {}
    static SeqVector basis(std::int64_t k, Side side = Side::Unilateral, Scalar c = 1.0);

    Side side() const { return side_; }
    const Map& coords() const { return coords_; }
    bool empty() const { return coords_.empty(); }
    std::size_t size() const { return coords_.size(); }
    std::int64_t min_index() const;
    std::int64_t max_index() const;

    Scalar get(std::int64_t k) const;
    void set(std::int64_t k, Scalar v);
    void add_to(std::int64_t k, Scalar v);

    SeqVector& operator+=(const SeqVector& o);
    SeqVector& operator-=(const SeqVector& o);
    SeqVector& operator*=(Scalar c);

    friend bool operator==(const SeqVector& a, const SeqVector& b) {
        return a.side_ == b.side_ && a.coords_ == b.coords_;
    }

private:
    void check_index(std::int64_t k) const;

    Side side_;
    Map coords_;
};

SeqVector operator+(SeqVector a, const SeqVector& b);
SeqVector operator-(SeqVector a, const SeqVector& b);
SeqVector operator*(Scalar c, SeqVector a);

struct SeminormValue {
    double value = 0;
    double log_value = -INFINITY;  // log of value; finite even when value overflows
    int j = 0;                     // 0 for the plain l^p norm
    double p = 2;
};

SeminormValue lp_norm(const SeqVector& x, double p);

// Positive matrix a_{j,k} (j >= 1, k >= 0), nondecreasing in j; evaluated as log a_{j,k}.
class KotheMatrix {
public:
    using LogRule = std::function<double(int, std::int64_t)>;

    static KotheMatrix entire();
    static KotheMatrix power(std::vector<double> ladder);
    // validated on j <= 32, k <= 1024
    static KotheMatrix custom(std::string name, LogRule log_entry);

    const std::string& name() const { return name_; }
    double log_entry(int j, std::int64_t k) const;
    double entry(int j, std::int64_t k) const;
    int max_j() const { return max_j_; }  // 0 when unbounded

private:
    KotheMatrix() = default;

    std::string name_;
    LogRule log_entry_;
    std::function<double(int, std::int64_t)> entry_;  // direct form when exact
    int max_j_ = 0;
};

SeminormValue kothe_seminorm(const SeqVector& x, const KotheMatrix& a, int j, double p);

// Which seminorm to evaluate: l^p norm, or p_j of a Kothe space.
struct SeminormSpec {
    enum class Kind { Lp, Kothe };
    Kind kind = Kind::Lp;
    double p = 2;
    int j = 1;
    std::shared_ptr<const KotheMatrix> matrix;

    static SeminormSpec lp(double p) { return {Kind::Lp, p, 0, nullptr}; }
    static SeminormSpec kothe(std::shared_ptr<const KotheMatrix> a, int j, double p) {
        return {Kind::Kothe, p, j, std::move(a)};
    }
    // same family of seminorms at a different rank; l^p ignores the rank
    SeminormSpec with_rank(int rank) const;
    SeminormValue eval(const SeqVector& x) const;
    std::string describe() const;
};

}  // namespace hyperlab
