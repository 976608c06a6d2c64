#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <stdexcept>

#include "emalg/braided.hpp"
#include "emalg/models/conjugated.hpp"
#include "emalg/models/euclidean.hpp"
#include "emalg/models/heisenberg.hpp"

using namespace emalg;

namespace {

// Forwarding carrier that drops the parity component of every scale, so the
// point symmetry collapses to the identity map.
class ParityBlindModel {
  public:
    using Point = EuclideanModel::Point;
    using Scalar = Rat;
    static constexpr bool exact = true;

    explicit ParityBlindModel(int dim) : base_(dim) {}
    std::string name() const { return "parity_blind"; }
    Point circle(const Scale& s, const Point& x, const Point& u) const {
        return base_.circle(Scale(s.factor()), x, u);
    }
    Point bullet(const Scale& s, const Point& x, const Point& u) const {
        return base_.bullet(Scale(s.factor()), x, u);
    }
    bool equal(const Point& a, const Point& b) const { return base_.equal(a, b); }
    Point sample(Rng& rng) const { return base_.sample(rng); }
    Scale sample_scale(Rng& rng) const { return base_.sample_scale(rng); }
    std::string describe(const Point& p) const { return base_.describe(p); }

  private:
    EuclideanModel base_;
};

}  // namespace

TEST_CASE("point symmetry values on the group carrier") {
    const SigmaExtension<HeisenbergModel> ext{HeisenbergModel{}};
    const HeisenbergModel& m = ext.base();
    const HeisenbergPoint e0 = m.identity();
    CHECK(ext.sigma(e0, HeisenbergPoint{Rat(1), Rat(2), Rat(3)}) ==
          HeisenbergPoint{Rat(-1), Rat(-2), Rat(3)});
    CHECK(sigma_apply(ext, e0, HeisenbergPoint{Rat(1), Rat(2), Rat(3)}) ==
          HeisenbergPoint{Rat(-1), Rat(-2), Rat(3)});
    Rng rng(61);
    for (int i = 0; i < 50; ++i) {
        const auto x = m.sample(rng);
        CHECK(m.equal(ext.sigma(x, x), x));
    }
}

TEST_CASE("point symmetry on the flat carrier is reflection through the base") {
    const SigmaExtension<EuclideanModel> ext{EuclideanModel(2)};
    const EuclideanModel& m = ext.base();
    Rng rng(67);
    for (int i = 0; i < 100; ++i) {
        const auto x = m.sample(rng);
        const auto y = m.sample(rng);
        EuclideanModel::Point want(x);
        for (size_t c = 0; c < want.size(); ++c) want[c] = 2 * x[c] - y[c];
        CHECK(ext.sigma(x, y) == want);
    }
}

TEST_CASE("a parity-blind carrier is rejected") {
    CHECK_THROWS_AS(SigmaExtension<ParityBlindModel>{ParityBlindModel(2)}, std::invalid_argument);
}

TEST_CASE("sigma audit passes exactly on the exact carriers") {
    const SigmaExtension<HeisenbergModel> hext{HeisenbergModel{}};
    const AuditReport rh = audit_sigma(hext, 71, 60, Schedule::dyadic(1, 8));
    CHECK(rh.all_pass());
    CHECK(rh.tolerance == 0.0);
    for (const char* name :
         {"involutive", "commutes_with_dilation", "isometry_dx", "tangent_morphism"}) {
        const CheckResult* c = rh.find(name);
        REQUIRE(c != nullptr);
        CHECK(c->pass);
    }

    const SigmaExtension<EuclideanModel> qext{EuclideanModel(3)};
    CHECK(audit_sigma(qext, 71, 60, Schedule::dyadic(1, 8)).all_pass());
}

TEST_CASE("sigma audit passes on the conjugated carrier within tolerance") {
    const SigmaExtension<ConjugatedModel> ext{ConjugatedModel::quadratic()};
    const AuditReport r = audit_sigma(ext, 71, 10, Schedule::dyadic(1, 16), 1e-8);
    CHECK(r.all_pass());
}

TEST_CASE("point symmetry satisfies the quandle axioms") {
    const SigmaExtension<HeisenbergModel> ext{HeisenbergModel{}};
    const HeisenbergModel& m = ext.base();
    Rng rng(73);
    for (int i = 0; i < 200; ++i) {
        const auto x = m.sample(rng);
        const auto y = m.sample(rng);
        const auto z = m.sample(rng);
        CHECK(m.equal(ext.sigma(x, x), x));
        CHECK(m.equal(ext.sigma(x, ext.sigma(x, y)), y));
        // self-distributivity of the symmetry family
        CHECK(m.equal(ext.sigma(x, ext.sigma(y, z)),
                      ext.sigma(ext.sigma(x, y), ext.sigma(x, z))));
    }
}

TEST_CASE("scaled difference intertwines with the point symmetry") {
    // sigma^{circle(e sigma, x, u)} Delta^x_{sigma e}(u, v) = Delta^x_e(sigma^x u, sigma^x v)
    const SigmaExtension<HeisenbergModel> ext{HeisenbergModel{}};
    const HeisenbergModel& m = ext.base();
    Rng rng(79);
    for (int i = 0; i < 200; ++i) {
        const auto x = m.sample(rng);
        const auto u = m.sample(rng);
        const auto v = m.sample(rng);
        const Scale e(rng.positive_rat());
        const Scale es = Scale::sigma() * e;
        const auto base = m.circle(es, x, u);
        const auto lhs = ext.sigma(base, rel_difference(m, x, u, v, es));
        const auto rhs = rel_difference(m, x, ext.sigma(x, u), ext.sigma(x, v), e);
        CHECK(m.equal(lhs, rhs));
    }
}

TEST_CASE("left translations intertwine the dilations at every parity") {
    const HeisenbergModel m;
    Rng rng(83);
    for (int i = 0; i < 200; ++i) {
        const auto g = m.sample(rng);
        const auto x = m.sample(rng);
        const auto y = m.sample(rng);
        const Scale e = m.sample_scale(rng);
        CHECK(m.equal(m.mul(g, m.circle(e, x, y)), m.circle(e, m.mul(g, x), m.mul(g, y))));
    }
}

TEST_CASE("sampled braid relation on the continuous carriers") {
    const SigmaExtension<HeisenbergModel> hext{HeisenbergModel{}};
    const AuditReport rh = braid_audit_continuous(hext, 89, 150);
    CHECK(rh.all_pass());
    for (const char* name : {"braid_relation", "nondegenerate_rows"}) {
        const CheckResult* c = rh.find(name);
        REQUIRE(c != nullptr);
        CHECK(c->pass);
        CHECK(c->gating);
    }
    const CheckResult* inv = rh.find("involutive_pairs");
    REQUIRE(inv != nullptr);
    CHECK_FALSE(inv->gating);
    CHECK_FALSE(inv->pass);  // (x, y) -> (sigma^x y, x) is not an involution

    const SigmaExtension<EuclideanModel> qext{EuclideanModel(2)};
    const AuditReport rq = braid_audit_continuous(qext, 89, 150);
    CHECK(rq.all_pass());
    CHECK_FALSE(rq.find("involutive_pairs")->pass);
}
