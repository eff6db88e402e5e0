#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "qhr/cartan.hpp"
#include "support.hpp"

using namespace qhr;
using std::numbers::pi;

namespace {
const Quaternion O{0.0};
const Quaternion ONE{1.0};
const Quaternion I = Quaternion::unit_i();
const Quaternion J = Quaternion::unit_j();
const Quaternion K = Quaternion::unit_k();

BoundaryPoint finite(const HermitianSpace& s, const Quaternion& q) {
  return boundary_point(s, QMatrix::column({q, ONE}));
}
}  // namespace

TEST_SUITE("cartan") {
  TEST_CASE("triple product") {
    const HermitianSpace h1 = HermitianSpace::h1(1);
    const BoundaryPoint o = origin_point(h1), inf = infinity_point(h1);
    CHECK(distance(hermitian_triple(h1, o, inf, finite(h1, I)), I) < 1e-15);
    CHECK_ERROR(hermitian_triple(h1, o, inf, o), DegenerateTriple);
    const Quaternion h = hermitian_triple(h1, finite(h1, I), finite(h1, I * 2.0), o);
    CHECK(std::abs(h.w) < 1e-15);
    CHECK(h.norm() > 0.1);
  }

  TEST_CASE("angular invariant examples") {
    const HermitianSpace h1 = HermitianSpace::h1(1);
    const BoundaryPoint o = origin_point(h1), inf = infinity_point(h1);
    CHECK(cartan_invariant(h1, o, inf, finite(h1, I)).angle == doctest::Approx(pi / 2));
    CHECK(cartan_invariant(h1, finite(h1, I), finite(h1, J), finite(h1, K)).angle ==
          doctest::Approx(pi / 2));
    CHECK_ERROR(cartan_from_triple(Quaternion{1e-13}), ZeroTriple);
    CHECK(cartan_from_triple(Quaternion{-1.0}).angle == doctest::Approx(0.0));
    // Values beyond π/2 are folded back into range.
    CHECK(cartan_from_triple(Quaternion{1.0}).angle == doctest::Approx(pi / 2));
  }

  TEST_CASE("lift rescaling and group invariance") {
    const HermitianSpace h1 = HermitianSpace::h1(1);
    oracle::Rng rng(21);
    for (int n = 0; n < 200; ++n) {
      const BoundaryPoint p[3] = {finite(h1, oracle::random_pure(rng, 1.0)),
                                  finite(h1, oracle::random_pure(rng, 1.0)),
                                  finite(h1, oracle::random_pure(rng, 1.0))};
      const double a = cartan_invariant(h1, p[0], p[1], p[2]).angle;
      CHECK(a >= 0.0);
      CHECK(a <= pi / 2 + 1e-12);
      const Quaternion l1 = oracle::random_unit(rng) * 2.0, l2 = oracle::random_unit(rng) * 0.3,
                       l3 = oracle::random_unit(rng);
      const Quaternion h =
          hermitian_triple_lifts(h1, p[0].lift * l1, p[1].lift * l2, p[2].lift * l3);
      CHECK(std::abs(cartan_from_triple(h).angle - a) < 1e-9);
      const QMatrix g = oracle::random_sp11(rng, 1);
      const double b = cartan_invariant(h1, apply(h1, g, p[0]), apply(h1, g, p[1]),
                                        apply(h1, g, p[2])).angle;
      CHECK(std::abs(b - a) < 1e-8);
    }
  }

  TEST_CASE("skew-involution interchanging two pairs") {
    const HermitianSpace h1 = HermitianSpace::h1(1);
    const BoundaryPoint o = origin_point(h1), inf = infinity_point(h1);
    CHECK_ERROR(interchanging_skew_involution(h1, o, inf, finite(h1, I), finite(h1, I)),
                DegenerateConfiguration);

    const BoundaryPoint ab = finite(h1, I), rb = finite(h1, -I);
    const QMatrix c = interchanging_skew_involution(h1, o, inf, ab, rb);
    CHECK(is_group_member(h1, c));
    CHECK(max_distance(c * c, -QMatrix::identity(2)) < 1e-9);
    CHECK(same_point(apply(h1, c, o), inf));
    CHECK(same_point(apply(h1, c, inf), o));
    CHECK(same_point(apply(h1, c, ab), rb));
    CHECK(same_point(apply(h1, c, rb), ab));
    // Anti-diagonal with entries in the (j, k) plane.
    CHECK(c(0, 0).norm() < 1e-12);
    CHECK(c(1, 1).norm() < 1e-12);

    // Transported configurations.
    oracle::Rng rng(22);
    for (int n = 0; n < 100; ++n) {
      const QMatrix g = oracle::random_sp11(rng, 1);
      const BoundaryPoint pts[4] = {apply(h1, g, o), apply(h1, g, inf),
                                    apply(h1, g, finite(h1, oracle::random_pure(rng, 1.0))),
                                    apply(h1, g, finite(h1, oracle::random_pure(rng, 1.0)))};
      const QMatrix cg = interchanging_skew_involution(h1, pts[0], pts[1], pts[2], pts[3]);
      const double scale = std::max(1.0, max_norm(cg) * max_norm(cg));
      CHECK(max_distance(cg * cg, -QMatrix::identity(2)) < 1e-9 * scale);
      CHECK(is_group_member(h1, cg, 1e-9 * scale));
      CHECK(same_point(apply(h1, cg, pts[0]), pts[1], 1e-6));
      CHECK(same_point(apply(h1, cg, pts[2]), pts[3], 1e-6));
    }

    CHECK_ERROR(interchanging_skew_involution(HermitianSpace::h1(2), infinity_point(HermitianSpace::h1(2)),
                                              origin_point(HermitianSpace::h1(2)),
                                              origin_point(HermitianSpace::h1(2)),
                                              origin_point(HermitianSpace::h1(2))),
                PreconditionViolated);
  }
}
