#include "doctest.h"

#include <algorithm>
#include <cmath>

#include "hyperlab/errors.hpp"
#include "hyperlab/orbits.hpp"

using namespace hyperlab;

TEST_SUITE("orbits") {

TEST_CASE("2B annihilates a finite support") {
    const auto t = orbit(OperatorFamily::lambda_b(), 2, SeqVector::basis(5), 10);
    const std::vector<double> want = {1, 2, 4, 8, 16, 32, 0, 0, 0, 0, 0};
    CHECK(t.seminorms == want);
    CHECK(t.distances.empty());
}

TEST_CASE("lambda B orbit reaches its target exactly") {
    OrbitOptions o;
    o.target = SeqVector::basis(0);
    const auto t = orbit(OperatorFamily::lambda_b(), 2, SeqVector::basis(5, Side::Unilateral, 1.0 / 32), 6, o);
    REQUIRE(t.distances.size() == 7);
    CHECK(t.distances[5] == 0);
    CHECK(t.distances[6] == 1);
}

TEST_CASE("differentiation orbit under p_1") {
    const auto t = orbit(OperatorFamily::diff(), 1, SeqVector::basis(3), 4);
    CHECK(t.seminorms == std::vector<double>{1, 3, 6, 6, 0});
}

TEST_CASE("orbit trace has N+1 entries and respects the support cap") {
    const auto x = SeqVector::basis(0) + SeqVector::basis(1) + SeqVector::basis(2);
    CHECK(orbit(OperatorFamily::cs(), 2, x, 0).seminorms.size() == 1);
    OrbitOptions o;
    o.support_cap = 2;
    CHECK_THROWS_AS(orbit(OperatorFamily::cs(), 2, x, 3, o), CapExceeded);
    CHECK_THROWS_AS(orbit(OperatorFamily::cs(), 2, x, -1), InvalidArgument);
}

TEST_CASE("isometric step reproduces the initial seminorm") {
    OrbitOptions o;
    o.target = SeqVector::basis(0);
    const auto t = orbit(OperatorFamily::lambda_b(), 1, SeqVector::basis(0), 3, o);
    CHECK(t.seminorms[0] == 1);
    CHECK(t.distances[0] == 0);
}

TEST_CASE("return density: empty, identity-like and block hits") {
    const auto lb = OperatorFamily::lambda_b();
    const auto none = return_density(lb, 2, SeqVector::basis(1), SeqVector::basis(40), 0.5, 50);
    CHECK(none.set.hits.empty());
    CHECK(none.density.upper == Rational(0));

    const auto id = OperatorFamily::poly_shift({1.0}, WeightSequence::unilateral(WeightRule::constant(1)),
                                               SpaceSpec::lp(2), Interval::open(0, 2));
    const auto y = SeqVector::basis(2) + SeqVector::basis(4);
    const auto all = return_density(id, 1, y, y, 1e-9, 20);
    CHECK(all.set.hits.size() == 21);
    CHECK(all.density.lower == Rational(1));

    const auto block = chc_block_vector(lb, Interval::closed(2, 2.01), SeqVector::basis(0), 0.1);
    const auto hit = return_density(lb, 2, block.x, SeqVector::basis(0), 0.3, 10);
    CHECK(hit.set.hits == std::vector<std::int64_t>{5});
    // recomputed from the trace
    for (std::int64_t n = 0; n <= 10; ++n) {
        const bool in = std::find(hit.set.hits.begin(), hit.set.hits.end(), n) != hit.set.hits.end();
        CHECK(in == (hit.trace.distances[static_cast<std::size_t>(n)] < 0.3));
    }
}

TEST_CASE("hitting sweep re-verifies block reports") {
    const auto lb = OperatorFamily::lambda_b();
    const auto r = chc_block_vector(lb, Interval::closed(2, 2.01), SeqVector::basis(0), 0.1);
    const auto s = hitting_sweep(lb, r);
    CHECK(s.violations == 0);
    CHECK(s.rows.size() == 101);
    for (const auto& h : s.rows) {
        CHECK(h.k == 5);
        CHECK(h.error <= 0.026);
    }
    CHECK(s.max_error <= 0.03);

    const auto one = hitting_sweep(lb, r, 1);
    CHECK(one.rows[0].error == 0);

    const auto cs = OperatorFamily::cs();
    const auto rc = chc_block_vector(cs, Interval::closed(1.5, 1.52), SeqVector::basis(0), 0.1);
    CHECK(hitting_sweep(cs, rc).violations == 0);
}

TEST_CASE("hitting sweep records violations as data") {
    const auto lb = OperatorFamily::lambda_b();
    auto r = chc_block_vector(lb, Interval::closed(2, 2.01), SeqVector::basis(0), 0.1);
    r.x = SeqVector();
    const auto s = hitting_sweep(lb, r, 5);
    CHECK(s.violations == 5);
    for (const auto& h : s.rows) {
        CHECK(h.k == -1);
        CHECK(h.error == 1);
    }
}

TEST_CASE("decay sweep on geometric weights") {
    const auto w = WeightSequence::bilateral(WeightRule::constant(0.5), WeightRule::constant(2));
    const auto b = bilateral_decay_basis(w, 1, 0, 32);
    DecaySweepOptions o;
    o.samples = 3;
    o.N = 20;
    const auto d = decay_sweep(w, b, o);
    for (std::int64_t n = 0; n <= 20; ++n)
        CHECK(d.max_norm[static_cast<std::size_t>(n)] == doctest::Approx(std::pow(0.5, n)).epsilon(1e-14));
    CHECK(d.violations == 0);
    CHECK(d.checks == 3 * 21 * 2);
}

TEST_CASE("decay sweep on the bump basis") {
    auto w = WeightSequence::bilateral(WeightRule::constant(0.5), WeightRule::constant(2));
    w.override_at(-1, 4.0);
    const auto b = bilateral_decay_basis(w, 1, 0, 32);
    REQUIRE(b.indices == std::vector<std::int64_t>{2});
    DecaySweepOptions o;
    o.samples = 2;
    o.N = 12;
    const auto d = decay_sweep(w, b, o);
    // ||B^n e_{-2}|| = 2^{-n}; the certificate products are 2^{-(n+1)}
    for (std::int64_t n = 0; n <= 12; ++n) {
        CHECK(d.max_norm[static_cast<std::size_t>(n)] == doctest::Approx(std::pow(0.5, n)).epsilon(1e-14));
        CHECK(d.max_norm[static_cast<std::size_t>(n)] <= 1);
    }
    CHECK(d.violations == 0);

    o.zero_coefficients = true;
    const auto z = decay_sweep(w, b, o);
    for (double v : z.max_norm) CHECK(v == 0);
    CHECK(z.violations == 0);
}

TEST_CASE("decay sweep residuals for nicemn output") {
    const std::vector<FamilyOnCompact> fams = {{OperatorFamily::lambda_b(), Interval::closed(2, 3)}};
    const auto r = nicemn_synthesize(fams, {SeqVector::basis(1), SeqVector::basis(2)}, FiniteSupportOracle{});
    const auto rows = decay_sweep(fams, r, 200);
    CHECK_FALSE(rows.empty());
    for (const auto& row : rows) CHECK(row.residual == 0);
}

}  // TEST_SUITE
