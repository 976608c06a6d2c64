#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "emalg/limits.hpp"
#include "emalg/models/conjugated.hpp"
#include "emalg/models/euclidean.hpp"
#include "emalg/models/heisenberg.hpp"

using namespace emalg;

TEST_CASE("schedule invariants") {
    CHECK_THROWS_AS(Schedule({}), std::invalid_argument);
    CHECK_THROWS_AS(Schedule({Scale(frac(2, 3))}), std::invalid_argument);  // modulus > 1/2
    CHECK_THROWS_AS(Schedule({Scale(frac(1, 2)), Scale(frac(1, 2))}), std::invalid_argument);
    CHECK_THROWS_AS(Schedule({Scale(frac(1, 4)), Scale(frac(1, 2))}), std::invalid_argument);
    CHECK_NOTHROW(Schedule({Scale(frac(1, 2)), Scale(frac(1, 3)), Scale(frac(1, 7))}));

    CHECK_THROWS_AS(Schedule::dyadic(0, 5), std::invalid_argument);
    CHECK_THROWS_AS(Schedule::dyadic(5, 4), std::invalid_argument);
    const Schedule s = Schedule::dyadic(2, 6);
    CHECK(s.size() == 5);
    CHECK(s.scales().front().modulus() == frac(1, 4));
    CHECK(s.scales().back().modulus() == frac(1, 64));
}

TEST_CASE("neville extrapolation is exact on low-degree polynomials") {
    const std::vector<Rat> xs{frac(1, 2), frac(1, 4), frac(1, 8)};
    std::vector<std::vector<Rat>> ys;
    for (const Rat& x : xs) ys.push_back({Rat(3) + 2 * x - x * x});
    const auto lim = neville0(xs, ys);
    REQUIRE(lim.size() == 1);
    CHECK(lim[0] == Rat(3));

    const std::vector<double> xd{0.5, 0.25, 0.125, 0.0625};
    std::vector<std::vector<double>> yd;
    for (double x : xd) yd.push_back({3.0 + 2.0 * x - x * x + 0.5 * x * x * x});
    const auto limd = neville0(xd, yd);
    CHECK(std::fabs(limd[0] - 3.0) < 1e-13);
}

TEST_CASE("constant family is recognized as exact") {
    const auto rep = estimate_limit(
        [&](const Scale&) { return std::vector<Rat>{frac(5, 7), Rat(-2)}; }, Schedule::dyadic(1, 10));
    CHECK(rep.exact);
    CHECK(rep.converged());
    CHECK_FALSE(rep.diverged);
    REQUIRE(rep.limit.has_value());
    CHECK((*rep.limit)[0] == frac(5, 7));
    CHECK((*rep.limit)[1] == Rat(-2));
    for (double r : rep.residuals) CHECK(r == 0.0);
    CHECK(std::isnan(rep.rate));
}

TEST_CASE("linear rational family: exact limit, rate one") {
    const Rat c = frac(3, 4), a = frac(-2, 5);
    const auto rep = estimate_limit(
        [&](const Scale& e) { return std::vector<Rat>{c + a * e.modulus()}; },
        Schedule::dyadic(1, 12));
    CHECK_FALSE(rep.exact);
    CHECK(rep.converged());
    REQUIRE(rep.limit.has_value());
    CHECK((*rep.limit)[0] == c);
    CHECK(rep.rate == doctest::Approx(1.0).epsilon(0.1));
    // residual at scale 1/2^j is |a| / 2^j, positive and strictly shrinking
    CHECK(rep.residuals.back() == doctest::Approx(0.4 / 4096.0).epsilon(1e-9));
    CHECK(rep.residuals.front() == doctest::Approx(0.4 / 2.0).epsilon(1e-9));
    CHECK(rep.residuals.back() < rep.residuals.front());
    CHECK(rep.scale_labels.front() == "1/2");
    CHECK(rep.moduli.front() == 0.5);
}

TEST_CASE("quadratic rational family: exact limit, rate two") {
    const Rat c = frac(1, 3), a = Rat(2);
    const auto rep = estimate_limit(
        [&](const Scale& e) {
            return std::vector<Rat>{c + a * e.modulus() * e.modulus()};
        },
        Schedule::dyadic(1, 12));
    CHECK(rep.converged());
    CHECK((*rep.limit)[0] == c);
    CHECK(rep.rate == doctest::Approx(2.0).epsilon(0.05));
}

TEST_CASE("floating families reach their limits within 1e-9") {
    const auto lin = estimate_limit(
        [&](const Scale& e) {
            const double m = to_double(e.modulus());
            return std::vector<double>{0.25 - 3.0 * m};
        },
        Schedule::dyadic(1, 20));
    CHECK(lin.converged());
    CHECK(std::fabs((*lin.limit)[0] - 0.25) < 1e-9);
    CHECK(lin.rate == doctest::Approx(1.0).epsilon(0.1));

    const auto quad = estimate_limit(
        [&](const Scale& e) {
            const double m = to_double(e.modulus());
            return std::vector<double>{-1.5 + 0.7 * m * m};
        },
        Schedule::dyadic(1, 20));
    CHECK(quad.converged());
    CHECK(std::fabs((*quad.limit)[0] + 1.5) < 1e-9);
    CHECK(quad.rate == doctest::Approx(2.0).epsilon(0.1));
}

TEST_CASE("growing family is flagged divergent, no limit invented") {
    const auto rep = estimate_limit(
        [&](const Scale& e) { return std::vector<Rat>{Rat(1) / e.modulus()}; },
        Schedule::dyadic(1, 10));
    CHECK(rep.diverged);
    CHECK_FALSE(rep.converged());
    CHECK_FALSE(rep.limit.has_value());
    CHECK(rep.residuals.empty());
}

TEST_CASE("tangent difference on the exact group carrier") {
    const HeisenbergModel m;
    const auto e0 = m.identity();
    const HeisenbergPoint u{Rat(1), Rat(0), Rat(0)};
    const HeisenbergPoint v{Rat(0), Rat(1), Rat(0)};
    const auto rep = tangent_difference(m, e0, u, v, Schedule::dyadic(1, 8));
    REQUIRE(rep.point.has_value());
    CHECK(*rep.point == HeisenbergPoint{Rat(-1), Rat(1), frac(-1, 2)});
    // matches x u^-1 v at x = identity
    CHECK(*rep.point == m.mul(m.inverse(u), v));

    // the self-difference family contracts to the base point
    Rng rng(41);
    for (int i = 0; i < 25; ++i) {
        const auto x = m.sample(rng);
        const auto w = m.sample(rng);
        const auto self_rep = tangent_difference(m, x, w, w, Schedule::dyadic(1, 8));
        REQUIRE(self_rep.point.has_value());
        CHECK(*self_rep.point == x);
    }
}

TEST_CASE("tangent closed forms on exact carriers") {
    const HeisenbergModel h;
    const EuclideanModel q(2);
    Rng rng(43);
    const Schedule sched = Schedule::dyadic(1, 8);
    for (int i = 0; i < 40; ++i) {
        {
            const auto x = h.sample(rng), u = h.sample(rng), v = h.sample(rng);
            const auto d = tangent_difference(h, x, u, v, sched);
            const auto s = tangent_sum(h, x, u, v, sched);
            const auto iv = tangent_inverse(h, x, u, sched);
            REQUIRE(d.point.has_value());
            REQUIRE(s.point.has_value());
            REQUIRE(iv.point.has_value());
            CHECK(*d.point == h.mul(x, h.mul(h.inverse(u), v)));
            CHECK(*s.point == h.mul(u, h.mul(h.inverse(x), v)));
            CHECK(*iv.point == h.mul(x, h.mul(h.inverse(u), x)));
        }
        {
            const auto x = q.sample(rng), u = q.sample(rng), v = q.sample(rng);
            const auto s = tangent_sum(q, x, u, v, sched);
            REQUIRE(s.point.has_value());
            EuclideanModel::Point want(x);
            for (size_t c = 0; c < want.size(); ++c) want[c] = u[c] + v[c] - x[c];
            CHECK(*s.point == want);
        }
    }
}

TEST_CASE("tangent difference on the conjugated carrier") {
    const ConjugatedModel m = ConjugatedModel::quadratic();
    const ConjugatedModel::Point x{0.0, 0.0};
    const ConjugatedModel::Point u{1.0, 1.0};
    const ConjugatedModel::Point v{-1.0, 1.0};
    const auto rep = tangent_difference(m, x, u, v, Schedule::dyadic(1, 16));
    REQUIRE(rep.point.has_value());
    CHECK(std::fabs((*rep.point)[0] - (-2.0)) < 1e-9);
    CHECK(std::fabs((*rep.point)[1] - 4.0) < 1e-9);
    CHECK(rep.seq.rate == doctest::Approx(1.0).epsilon(0.2));
}

TEST_CASE("tangent structure audit at a group identity includes the group law row") {
    const HeisenbergModel m;
    const auto r = audit_conical(m, m.identity(), 91, 15, Schedule::dyadic(1, 8));
    CHECK(r.all_pass());
    REQUIRE(r.find("group_law_at_identity") != nullptr);
    CHECK(r.find("group_law_at_identity")->pass);
    for (const char* name : {"sum_associative", "sum_neutral", "sum_inverse", "dilation_morphism"})
        CHECK(r.find(name)->pass);

    // away from the identity the ambient-law row is not emitted
    Rng rng(5);
    HeisenbergPoint x = m.sample(rng);
    while (m.equal(x, m.identity())) x = m.sample(rng);
    const auto r2 = audit_conical(m, x, 91, 15, Schedule::dyadic(1, 8));
    CHECK(r2.all_pass());
    CHECK(r2.find("group_law_at_identity") == nullptr);
}

TEST_CASE("tangent structure audit on the other carriers") {
    const EuclideanModel q(2);
    CHECK(audit_conical(q, q.identity(), 91, 15, Schedule::dyadic(1, 8)).all_pass());

    const ConjugatedModel c = ConjugatedModel::quadratic();
    const auto r = audit_conical(c, ConjugatedModel::Point{0.0, 0.0}, 91, 10,
                                 Schedule::dyadic(1, 14), 1e-6);
    CHECK(r.all_pass());
    CHECK(r.tolerance == 1e-6);
}

TEST_CASE("metric cone law holds exactly on the exact carriers") {
    const EuclideanModel q(3);
    const HeisenbergModel h;
    CHECK(check_cone(q, 17, 500, 2).all_pass());
    CHECK(check_cone(h, 17, 500, 2).all_pass());
}

TEST_CASE("scaled-distance residual vanishes identically on exact carriers") {
    const HeisenbergModel h;
    Rng rng(29);
    const auto x = h.sample(rng);
    const auto rep = check_A2(h, x, 3, 50, Schedule::dyadic(1, 15));
    CHECK(rep.exact);
    CHECK(rep.converged());
    for (const auto& v : rep.values) CHECK(v[0] == 0.0);
    CHECK((*rep.limit)[0] == 0.0);

    const EuclideanModel q(2);
    const auto repq = check_A2(q, q.identity(), 3, 50, Schedule::dyadic(1, 15));
    CHECK(repq.exact);
    for (const auto& v : repq.values) CHECK(v[0] == 0.0);
}

TEST_CASE("scaled-distance residual on the conjugated carrier converges at rate one") {
    const ConjugatedModel m = ConjugatedModel::quadratic();
    const ConjugatedModel::Point x{0.0, 0.0};
    const auto rep = check_A2(m, x, 5, 60, Schedule::dyadic(5, 15));
    CHECK(rep.converged());
    CHECK_FALSE(rep.exact);
    CHECK(rep.rate == doctest::Approx(1.0).epsilon(0.2));
    CHECK(std::fabs((*rep.limit)[0]) < 1e-6);

    // the measured rate is uniform: one pair or a hundred give the same slope
    const auto one = check_A2(m, x, 5, 1, Schedule::dyadic(5, 15));
    const auto many = check_A2(m, x, 5, 100, Schedule::dyadic(5, 15));
    REQUIRE(one.converged());
    REQUIRE(many.converged());
    CHECK(std::fabs(one.rate - many.rate) < 0.3);
}

TEST_CASE("tangent metric is nondegenerate on sampled pairs") {
    const ConjugatedModel m = ConjugatedModel::quadratic();
    Rng rng(53);
    for (int i = 0; i < 50; ++i) {
        const auto x = m.sample(rng);
        const auto u = m.sample(rng);
        const auto v = m.sample(rng);
        if (m.distance(u, v) > 1e-9) CHECK(m.tangent_distance(x, u, v) > 0.0);
        CHECK(m.tangent_distance(x, u, u) == 0.0);
    }
}
