#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "hyperlab/sequence_spaces.hpp"
#include "hyperlab/weights.hpp"

namespace hyperlab {

// (B_w^n x)_j = (prod_{v=1}^n w_{j+v}) x_{j+n}; unilateral coordinates below 0 are dropped.
SeqVector apply_shift_power(const WeightSequence& w, const SeqVector& x, std::int64_t n, double lambda = 0);
// F_w^n with F_w e_j = e_{j+1} / w_{j+1}
SeqVector apply_forward_power(const WeightSequence& w, const SeqVector& y, std::int64_t n, double lambda = 0);

struct Interval {
    double lo = 0;
    double hi = 0;  // may be +inf
    bool lo_open = true;
    bool hi_open = true;

    static Interval open(double a, double b) { return {a, b, true, true}; }
    static Interval closed(double a, double b) { return {a, b, false, false}; }

    bool contains(double x) const;
    bool closure_contains(double x) const;
    bool bounded() const;
    Interval clip_to_closure(const Interval& outer) const;
    std::string str() const;
};

struct SpaceSpec {
    enum class Kind { Lp, Kothe };
    Kind kind = Kind::Lp;
    double p = 2;
    std::shared_ptr<const KotheMatrix> matrix;
    Side side = Side::Unilateral;

    static SpaceSpec lp(double p, Side side = Side::Unilateral);
    static SpaceSpec kothe(std::shared_ptr<const KotheMatrix> a, double p);

    // p_j; l^p ignores j
    SeminormSpec seminorm(int j = 1) const;
    std::string describe() const;
};

class OperatorFamily {
public:
    // T_{n,lambda} = (lambda B_w)^n, direct B_{w_lambda}^n, or (lambda P(B_w))^n
    enum class Action { Iterate, Direct, PolyIterate };
    // Monotone: |coordinates| of T_{n,lambda}x grow with lambda and those of S_{n,lambda}y shrink,
    // so suprema over a compact parameter set sit at its endpoints.
    enum class Envelope { Monotone, Grid };

    static OperatorFamily lambda_b(double p = 2);
    static OperatorFamily cs(double p = 2);
    static OperatorFamily diff();
    static OperatorFamily shift(WeightSequence w, SpaceSpec space, Action action, Interval range);
    static OperatorFamily poly_shift(std::vector<Scalar> coeffs, WeightSequence w, SpaceSpec space, Interval range);

    const std::string& name() const { return name_; }
    const WeightSequence& weights() const { return w_; }
    Action action() const { return action_; }
    const Interval& range() const { return range_; }
    const SpaceSpec& space() const { return space_; }
    const std::vector<Scalar>& coeffs() const { return coeffs_; }
    Envelope envelope() const { return envelope_; }
    int grid_size() const { return grid_size_; }
    OperatorFamily& set_grid(Envelope e, int grid_size);

    SeminormSpec default_seminorm() const { return space_.seminorm(1); }

    SeqVector step(const SeqVector& x, double lambda) const;
    SeqVector apply(const SeqVector& x, std::int64_t n, double lambda) const;
    bool has_right_inverse() const { return action_ != Action::PolyIterate; }
    // S_{n,lambda}; lambda must lie in the open parameter interval
    SeqVector right_inverse(const SeqVector& y, std::int64_t n, double lambda) const;
    // T_{n,lambda} S_{n,mu} y with the weights cancelled coordinatewise, so large n cannot underflow
    SeqVector round_trip(const SeqVector& y, std::int64_t n, double lambda, double mu) const;
    void check_parameter(double lambda) const;

    std::string describe() const;

private:
    void spot_check() const;

    std::string name_;
    WeightSequence w_;
    Action action_ = Action::Iterate;
    Interval range_;
    SpaceSpec space_;
    std::vector<Scalar> coeffs_;
    Envelope envelope_ = Envelope::Monotone;
    int grid_size_ = 101;
};

// Parameters at which a supremum over K is evaluated: the upper endpoint for monotone
// families, otherwise a uniform grid of the family's grid size.
std::vector<double> sup_parameters(const OperatorFamily& fam, const Interval& k);

// sup_{lambda in K} num(T_{n,lambda} e_k) / den(e_k)
double family_bound_on_basis(const OperatorFamily& fam, const Interval& k_set, std::int64_t n, std::int64_t k,
                             const SeminormSpec& num, const SeminormSpec& den);

}  // namespace hyperlab
