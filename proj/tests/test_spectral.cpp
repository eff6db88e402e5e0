#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "qhr/spectral.hpp"
#include "support.hpp"

using namespace qhr;
using std::numbers::pi;

namespace {
const Quaternion O{0.0};
const Quaternion ONE{1.0};
const Quaternion I = Quaternion::unit_i();
const Quaternion J = Quaternion::unit_j();
const Quaternion K = Quaternion::unit_k();
}  // namespace

TEST_SUITE("spectral") {
  TEST_CASE("eigenvalue classes") {
    const auto d = eigenvalue_classes(oracle::normal_diag(0.5, pi / 3));
    REQUIRE(d.size() == 2);
    CHECK(std::abs(d[0].rep - std::polar(0.5, pi / 3)) < 1e-12);
    CHECK(std::abs(d[1].rep - std::polar(2.0, pi / 3)) < 1e-12);
    for (const QMatrix& m : {QMatrix{{O, J}, {J, O}}, QMatrix{{K, J}, {O, K}}}) {
      const auto c = eigenvalue_classes(m);
      REQUIRE(c.size() == 2);
      CHECK(std::abs(c[0].rep - Complex(0, 1)) < 1e-6);
      CHECK(std::abs(c[1].rep - Complex(0, 1)) < 1e-6);
    }
  }

  TEST_CASE("right eigenpairs satisfy A v = v lambda") {
    oracle::Rng rng(12);
    for (int i = 0; i < 50; ++i) {
      const QMatrix a = oracle::random_sp11(rng, 2);
      if (!is_hyperbolic(a)) continue;
      for (const EigenPair& e : right_eigen(a)) {
        const double scale = std::max(1.0, max_norm(a));
        CHECK(max_distance(a * e.vector, e.vector * Quaternion(e.cls.rep)) < 1e-8 * scale);
        CHECK(std::abs(vector_norm(e.vector) - 1.0) < 1e-12);
      }
    }
  }

  TEST_CASE("classification") {
    const HermitianSpace h1 = HermitianSpace::h1(1);
    const IsometryReport hyp = classify(h1, oracle::normal_diag(0.5, pi / 3));
    CHECK(hyp.verdict == Verdict::Hyperbolic);
    REQUIRE(hyp.hyperbolic.has_value());
    CHECK(hyp.hyperbolic->r == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(hyp.hyperbolic->theta == doctest::Approx(pi / 3).epsilon(1e-12));

    const Quaternion e = expi(pi / 5);
    const IsometryReport ell = classify(h1, QMatrix::diagonal({e, e}));
    CHECK(ell.verdict == Verdict::Elliptic);
    bool negative = false;
    for (const EigenPair& p : ell.eigen) negative = negative || p.herm_norm_sign == NormSign::Negative;
    CHECK(negative);

    CHECK(classify(h1, QMatrix{{ONE, O}, {I, ONE}}).verdict == Verdict::Parabolic);
    CHECK_ERROR(classify(h1, QMatrix::diagonal({Quaternion{2.0}, Quaternion{2.0}})), NotGroupMember);
    CHECK(to_string(Verdict::Elliptic) == "elliptic");

    // The same isometries written in the ball model.
    const HermitianSpace h0 = HermitianSpace::h0(1);
    const QMatrix t = h1_to_h0(1);
    const QMatrix t_inv = inverse(t);
    CHECK(classify(h0, t * oracle::normal_diag(0.5, pi / 3) * t_inv).verdict == Verdict::Hyperbolic);
    CHECK(classify(h0, t * QMatrix{{ONE, O}, {I, ONE}} * t_inv).verdict == Verdict::Parabolic);
    CHECK(classify(h0, QMatrix::diagonal({e, e})).verdict == Verdict::Elliptic);
  }

  TEST_CASE("normal form of a diagonal element") {
    const HermitianSpace h1 = HermitianSpace::h1(1);
    const QMatrix a = oracle::normal_diag(0.5, pi / 3);
    const HyperbolicData h = hyperbolic_normal_form(h1, a);
    CHECK(h.r == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(h.theta == doctest::Approx(pi / 3).epsilon(1e-12));
    // The eigenvalue 2e^{iπ/3} (modulus above one) sits on the origin line.
    CHECK(same_point(h.attracting, origin_point(h1)));
    CHECK(same_point(h.repelling, infinity_point(h1)));
    CHECK(same_point(apply(h1, a, h.attracting), h.attracting));
    CHECK(h.residual < 1e-12);
    CHECK(max_distance(h.C_A * h.E_A * inverse(h.C_A), a) < 1e-12);
    CHECK(is_group_member(h1, h.C_A));
    CHECK_ERROR(hyperbolic_normal_form(h1, QMatrix::identity(2)), NotHyperbolic);
  }

  TEST_CASE("normal form under conjugation") {
    const HermitianSpace h1 = HermitianSpace::h1(1);
    oracle::Rng rng(13);
    for (int i = 0; i < 100; ++i) {
      const double r = oracle::uniform(rng, 0.2, 0.9);
      const double th = oracle::uniform(rng, 0.05, pi - 0.05);
      const QMatrix g = oracle::random_sp11(rng, 2);
      const QMatrix a = g * oracle::normal_diag(r, th) * oracle::h1_inverse(g);
      const HyperbolicData h = hyperbolic_normal_form(h1, a);
      CHECK(h.r == doctest::Approx(r).epsilon(1e-8));
      CHECK(h.theta == doctest::Approx(th).epsilon(1e-8));
      CHECK(h.residual < 1e-8 * max_norm(a) * max_norm(a));
      CHECK(is_group_member(h1, h.C_A, 1e-8 * max_norm(h.C_A) * max_norm(h.C_A)));
      // Fixed points are the images of o and ∞.
      CHECK(same_point(h.attracting, apply(h1, g, origin_point(h1)), 1e-6));
      CHECK(same_point(h.repelling, apply(h1, g, infinity_point(h1)), 1e-6));
      CHECK(are_conjugate_hyperbolic(a, oracle::normal_diag(r, th)));
    }
  }

  TEST_CASE("conjugacy of hyperbolic elements") {
    const QMatrix a = oracle::normal_diag(0.5, pi / 3);
    CHECK_FALSE(are_conjugate_hyperbolic(a, oracle::normal_diag(0.25, pi / 3)));
    const Quaternion u = exp_axis(Quaternion{0, 1, 1, 0}.normalized(), 0.9);
    const QMatrix s = QMatrix::scalar(2, u);
    const QMatrix b = s * a * QMatrix::scalar(2, u.conj());
    CHECK(are_conjugate_hyperbolic(a, b));
    CHECK_ERROR(are_conjugate_hyperbolic(a, QMatrix::identity(2)), NotHyperbolic);
  }

  TEST_CASE("higher rank normal form") {
    const HermitianSpace h1 = HermitianSpace::h1(2);
    const QMatrix a = QMatrix::diagonal({Quaternion(std::polar(0.3, 1.0)), expi(0.4),
                                         Quaternion(std::polar(1 / 0.3, 1.0))});
    const HyperbolicData h = hyperbolic_normal_form(h1, a);
    CHECK(h.r == doctest::Approx(0.3));
    CHECK(h.theta == doctest::Approx(1.0));
    REQUIRE(h.phis.size() == 1);
    CHECK(h.phis[0] == doctest::Approx(0.4));
    CHECK(h.residual < 1e-10);
  }
}
