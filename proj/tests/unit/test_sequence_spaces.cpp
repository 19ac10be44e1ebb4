#include "doctest.h"

#include <cmath>
#include <random>

#include "hyperlab/errors.hpp"
#include "hyperlab/sequence_spaces.hpp"
#include "oracles/oracles.hpp"

using namespace hyperlab;

namespace {

oracle::Dense dense(const SeqVector& v, std::size_t size) {
    oracle::Dense d(size, 0.0);
    for (const auto& [k, c] : v.coords()) d[static_cast<std::size_t>(k)] = c;
    return d;
}

}  // namespace

TEST_SUITE("sequence_spaces") {

TEST_CASE("vectors drop zero coordinates") {
    SeqVector v;
    v.set(3, 2.0);
    v.set(5, Scalar(0, 1));
    CHECK(v.size() == 2);
    v.add_to(3, -2.0);
    CHECK(v.size() == 1);
    CHECK(v.get(3) == Scalar(0));
    CHECK(v.min_index() == 5);
    v *= 0.0;
    CHECK(v.empty());
    CHECK_THROWS_AS(v.max_index(), InvalidArgument);
}

TEST_CASE("unilateral vectors reject negative indices") {
    SeqVector u;
    CHECK_THROWS_AS(u.set(-1, 1.0), InvalidArgument);
    SeqVector b(Side::Bilateral);
    b.set(-4, 1.0);
    CHECK(b.min_index() == -4);
}

TEST_CASE("vector arithmetic") {
    const auto a = SeqVector::basis(0) + SeqVector::basis(2, Side::Unilateral, 3.0);
    const auto b = Scalar(2) * a - SeqVector::basis(0, Side::Unilateral, 2.0);
    CHECK(b.size() == 1);
    CHECK(b.get(2) == Scalar(6));
    CHECK(a - a == SeqVector());
}

TEST_CASE("lp norms match the dense oracle") {
    std::mt19937_64 rng(7);
    std::normal_distribution<double> g;
    for (double p : {1.0, 1.5, 2.0, 3.0}) {
        SeqVector v;
        for (int k = 0; k < 40; k += 3) v.set(k, Scalar(g(rng), g(rng)));
        CHECK(lp_norm(v, p).value == doctest::Approx(oracle::lp(dense(v, 40), p)).epsilon(1e-13));
    }
    CHECK(lp_norm(SeqVector(), 2).value == 0);
    CHECK_THROWS_AS(lp_norm(SeqVector::basis(0), 0.5), InvalidArgument);
}

TEST_CASE("lp norm survives overflowing coordinates") {
    SeqVector v;
    v.set(0, 1e200);
    v.set(1, 1e200);
    const auto n = lp_norm(v, 2);
    CHECK(n.log_value == doctest::Approx(std::log(1e200) + 0.5 * std::log(2.0)).epsilon(1e-14));
}

TEST_CASE("entire seminorms match the dense oracle") {
    SeqVector v;
    v.set(0, 1.0);
    v.set(2, -0.5);
    v.set(7, Scalar(0.25, 0.25));
    const auto A = KotheMatrix::entire();
    for (int j = 1; j <= 6; ++j)
        CHECK(kothe_seminorm(v, A, j, 2).value ==
              doctest::Approx(oracle::entire_seminorm(dense(v, 8), j, 2)).epsilon(1e-13));
    // p_1 is the plain norm
    CHECK(kothe_seminorm(v, A, 1, 2).value == doctest::Approx(lp_norm(v, 2).value).epsilon(1e-15));
}

TEST_CASE("entire seminorm in log space at huge columns") {
    const auto v = SeqVector::basis(5000);
    const auto A = KotheMatrix::entire();
    const auto s = kothe_seminorm(v, A, 10, 2);
    CHECK(s.log_value == doctest::Approx(5000 * std::log(10.0)).epsilon(1e-14));
    CHECK(std::isinf(s.value));
}

TEST_CASE("power matrix follows its ladder") {
    const auto A = KotheMatrix::power({0.5, 0.75, 0.9});
    CHECK(A.max_j() == 3);
    CHECK(A.entry(2, 3) == doctest::Approx(0.75 * 0.75 * 0.75));
    CHECK_THROWS_AS(A.entry(4, 0), InvalidArgument);
    CHECK_THROWS_AS(KotheMatrix::power({0.9, 0.5}), InvalidArgument);
    CHECK_THROWS_AS(KotheMatrix::power({}), InvalidArgument);
    CHECK_THROWS_AS(KotheMatrix::power({0.0}), InvalidArgument);
}

TEST_CASE("custom matrices are validated on a finite box") {
    const auto A = KotheMatrix::custom("k", [](int j, std::int64_t k) { return j * std::log1p(static_cast<double>(k)); });
    CHECK(A.entry(2, 3) == doctest::Approx(16.0));
    CHECK_THROWS_AS(KotheMatrix::custom("dec", [](int j, std::int64_t) { return -static_cast<double>(j); }),
                    InvalidArgument);
}

TEST_CASE("seminorm specs dispatch and rerank") {
    auto A = std::make_shared<const KotheMatrix>(KotheMatrix::entire());
    const auto spec = SeminormSpec::kothe(A, 2, 2);
    const auto v = SeqVector::basis(3);
    CHECK(spec.eval(v).value == doctest::Approx(8.0));
    CHECK(spec.with_rank(3).eval(v).value == doctest::Approx(27.0));
    CHECK(SeminormSpec::lp(1).with_rank(9).eval(v).value == 1.0);
    CHECK_THROWS_AS(spec.eval(SeqVector::basis(-1, Side::Bilateral)), InvalidArgument);
}

}  // TEST_SUITE
