#include "doctest.h"

#include <cmath>

#include "hyperlab/constructions.hpp"
#include "hyperlab/errors.hpp"
#include "oracles/oracles.hpp"

using namespace hyperlab;

namespace {

WeightSequence bump_weights() {
    auto w = WeightSequence::bilateral(WeightRule::constant(0.5), WeightRule::constant(2));
    w.override_at(-1, 4.0);
    return w;
}

}  // namespace

TEST_SUITE("constructions") {

TEST_CASE("lambda B block on [2, 2.01]") {
    const auto fam = OperatorFamily::lambda_b();
    const auto r = chc_block_vector(fam, Interval::closed(2, 2.01), SeqVector::basis(0), 0.1);
    CHECK(r.C == 5);
    CHECK(r.anchors == std::vector<std::int64_t>{5});
    CHECK(r.N1 == 5);
    REQUIRE(r.x.size() == 1);
    CHECK(r.x.get(5).real() == doctest::Approx(std::pow(2.0, -5)).epsilon(1e-15));
    CHECK(r.x_norm == doctest::Approx(0.03125));
    CHECK(r.per_lambda.size() == 101);
    // |(lambda/2)^5 - 1| at the right end
    CHECK(r.max_error == doctest::Approx(std::pow(1.005, 5) - 1).epsilon(1e-12));
    CHECK(r.max_error <= 0.026);
    CHECK(r.verified);
}

TEST_CASE("ladder and anchor recurrences hold exactly") {
    const auto fam = OperatorFamily::lambda_b();
    ChcBlockOptions o;
    o.N0 = 3;
    const auto r = chc_block_vector(fam, Interval::closed(2, 2.1), SeqVector::basis(0), 0.1, o);
    const std::size_t L = r.anchors.size();
    REQUIRE(L > 1);
    CHECK(r.ladder.size() == L + 1);
    CHECK(r.ladder[0] == 2);
    double covered = 0;
    for (std::size_t l = 0; l < L; ++l) {
        CHECK(r.anchors[l] == std::max(r.C, o.N0) + static_cast<std::int64_t>(l) * r.C);
        CHECK(r.deltas[l] == r.delta_rule.at(r.anchors[l]));
        CHECK(r.ladder[l + 1] == r.ladder[l] + r.deltas[l]);
        covered += r.deltas[l];
    }
    CHECK(covered >= 0.1);
    CHECK(covered - r.deltas.back() < 0.1);
    CHECK(r.verified);
}

TEST_CASE("CS block on [1.5, 1.52]") {
    const auto fam = OperatorFamily::cs();
    const auto r = chc_block_vector(fam, Interval::closed(1.5, 1.52), SeqVector::basis(0), 0.1);
    CHECK(r.verified);
    for (const auto& h : r.per_lambda) CHECK(h.error < 0.3);
}

TEST_CASE("wide intervals hit the ladder cap or underflow") {
    // about 1500 rungs; the last anchors need 2^-7000 coefficients
    CHECK_THROWS_AS(chc_block_vector(OperatorFamily::lambda_b(), Interval::closed(2, 2.3), SeqVector::basis(0), 0.1),
                    CapExceeded);
    ChcBlockOptions o;
    o.L_cap = 10;
    CHECK_THROWS_AS(chc_block_vector(OperatorFamily::lambda_b(), Interval::closed(2, 20), SeqVector::basis(0), 0.1, o),
                    IntervalTooWide);
}

TEST_CASE("bilateral basis: bump example") {
    const auto b = bilateral_decay_basis(bump_weights(), 3, 0, 64);
    REQUIRE(b.indices.size() == 3);
    CHECK(b.indices[0] == 2);
    CHECK(b.scan_max_f[0] == 1);
    CHECK(b.indices[1] == 3);
    CHECK(b.indices[2] == 4);
    for (double c : b.certificates) CHECK(c <= 1);
    // from e_{-2} every factor is 1/2
    CHECK(b.certificates[0] == 0.5);
}

TEST_CASE("bilateral basis: constant one half gives consecutive indices") {
    const auto w = WeightSequence::bilateral(WeightRule::constant(0.5), WeightRule::constant(2));
    const auto b = bilateral_decay_basis(w, 5, 0, 32);
    CHECK(b.indices == std::vector<std::int64_t>{0, 1, 2, 3, 4});
    for (auto f : b.scan_max_f) CHECK(f == -1);
}

TEST_CASE("bilateral basis certificates match brute-force products") {
    auto w = WeightSequence::bilateral(WeightRule::hash(77, 0.2, 0.9), WeightRule::constant(2));
    w.override_at(-3, 9.0).override_at(-4, 3.0).override_at(-11, 5.0);
    const auto b = bilateral_decay_basis(w, 8, 0, 80);
    for (std::size_t j = 0; j < b.indices.size(); ++j) {
        const auto prods = oracle::left_products([&](std::int64_t i) { return std::abs(w.at(i)); }, b.indices[j], 80);
        double top = 0;
        for (double v : prods) top = std::max(top, v);
        CHECK(b.certificates[j] == doctest::Approx(top).epsilon(1e-12));
        CHECK(b.certificates[j] <= 1);
        if (j > 0) CHECK(b.indices[j] > b.indices[j - 1]);
    }
}

TEST_CASE("bilateral basis errors") {
    CHECK_THROWS_AS(
        bilateral_decay_basis(WeightSequence::bilateral(WeightRule::constant(2), WeightRule::constant(2)), 2, 0, 32),
        PreconditionFailed);
    // products stay above 1 until n = 14, past half of a horizon of 26
    auto w = WeightSequence::bilateral(WeightRule::constant(0.5), WeightRule::constant(2));
    for (int n = 1; n <= 10; ++n) w.override_at(-n, 1.5);
    CHECK_THROWS_AS(bilateral_decay_basis(w, 1, 0, 26), ScanHorizonError);
    CHECK(bilateral_decay_basis(w, 0, 0, 26).indices.empty());
    CHECK(bilateral_decay_basis(w, 1, 0, 64).indices.size() == 1);
}

TEST_CASE("m rules") {
    CHECK(parse_m_rule("j")(3, 2) == 2);
    CHECK(parse_m_rule("2j")(3, 2) == 4);
    CHECK(parse_m_rule("nj")(3, 2) == 6);
    CHECK(parse_m_rule("j+3")(3, 2) == 5);
    CHECK_THROWS_AS(parse_m_rule("j+x"), ConfigError);
    CHECK_THROWS_AS(parse_m_rule("3j"), ConfigError);
}

TEST_CASE("mk basis for the differentiation family") {
    const auto fam = OperatorFamily::diff();
    const auto b = kothe_mk_basis(fam, 1);
    CHECK(b.indices == std::vector<std::int64_t>{0});
    const auto deeper = kothe_mk_basis(fam, 4);
    REQUIRE(deeper.indices.size() == 4);
    // re-evaluate the defining inequality independently
    for (const auto& c : deeper.table) {
        const std::int64_t k = deeper.indices[static_cast<std::size_t>(c.l - 1)];
        const Interval K = Interval::closed(1.0 / c.n, c.n).clip_to_closure(fam.range());
        const double v = family_bound_on_basis(fam, K, c.m, k, fam.space().seminorm(c.j),
                                               fam.space().seminorm(2 * c.j));
        CHECK(v == doctest::Approx(c.value));
        CHECK(v <= 2.0);
    }
    CHECK(kothe_mk_basis(fam, 0).indices.empty());
}

TEST_CASE("mk basis for CS starting at index 1") {
    MkOptions o;
    o.m = parse_m_rule("j");
    o.m_token = "j";
    o.start_index = 1;
    const auto b = kothe_mk_basis(OperatorFamily::cs(), 1, o);
    CHECK(b.indices == std::vector<std::int64_t>{1});
    REQUIRE(b.table.size() == 1);
    CHECK(b.table[0].value == doctest::Approx(2.0));
}

TEST_CASE("mk basis reports the failing constraint at the cap") {
    MkOptions o;
    o.C = [](int, int) { return 1e-3; };
    o.scan_cap = 20;
    o.start_index = 1;
    try {
        (void)kothe_mk_basis(OperatorFamily::cs(), 1, o);
        FAIL("expected CapExceeded");
    } catch (const CapExceeded& e) {
        CHECK(std::string(e.what()).find("(n,j,m) = (1,1,1)") != std::string::npos);
    }
}

TEST_CASE("nicemn on lambda B with finite-support oracle keeps x_i = u_i") {
    const std::vector<FamilyOnCompact> fams = {{OperatorFamily::lambda_b(), Interval::closed(2, 3)}};
    std::vector<SeqVector> u = {SeqVector::basis(1), SeqVector::basis(2), SeqVector::basis(3)};
    const auto r = nicemn_synthesize(fams, u, FiniteSupportOracle{});
    REQUIRE(r.x.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) CHECK(r.x[i] == u[i]);
    CHECK(r.selected.size() == 4);
    for (const auto& b : r.bounds) CHECK(b.value < b.bound);
    // B^k e_i vanishes once k > i, so the first window starts above the largest index
    CHECK(r.selected.front() >= 2);

    NicemnOptions none;
    none.truncation = 0;
    const auto bare = nicemn_synthesize(fams, u, FiniteSupportOracle{}, none);
    CHECK(bare.bounds.empty());
    CHECK(bare.x == u);
}

TEST_CASE("nicemn normalizes by the first seminorm and checks leading indices") {
    const std::vector<FamilyOnCompact> fams = {{OperatorFamily::lambda_b(), Interval::closed(2, 3)}};
    const auto r = nicemn_synthesize(fams, {SeqVector::basis(2, Side::Unilateral, 4.0)}, FiniteSupportOracle{});
    CHECK(r.x[0].get(2) == Scalar(1));
    CHECK_THROWS_AS(nicemn_synthesize(fams, {SeqVector::basis(2), SeqVector::basis(0) + SeqVector::basis(2)},
                                      FiniteSupportOracle{}),
                    PreconditionFailed);
}

TEST_CASE("nicemn rejects an oracle that breaks the smallness bound") {
    struct Loud : DenseOracle {
        std::string name() const override { return "loud"; }
        SeqVector perturb(int, int, const SeqVector&, double) const override { return SeqVector::basis(0); }
    };
    const std::vector<FamilyOnCompact> fams = {{OperatorFamily::lambda_b(), Interval::closed(2, 3)}};
    CHECK_THROWS_AS(nicemn_synthesize(fams, {SeqVector::basis(1)}, Loud{}), PreconditionFailed);
}

TEST_CASE("nicemn on CS over an mk basis") {
    MkOptions o;
    o.m = parse_m_rule("j");
    o.start_index = 1;
    const auto mk = kothe_mk_basis(OperatorFamily::cs(), 3, o);
    std::vector<SeqVector> u;
    for (auto k : mk.indices) u.push_back(SeqVector::basis(k));
    const std::vector<FamilyOnCompact> fams = {{OperatorFamily::cs(), Interval::closed(1.5, 2)}};
    NicemnOptions n;
    n.truncation = 3;
    const auto r = nicemn_synthesize(fams, u, FiniteSupportOracle{}, n);
    CHECK(r.x == u);
    for (const auto& b : r.bounds) CHECK(b.value < b.bound);
}

}  // TEST_SUITE
