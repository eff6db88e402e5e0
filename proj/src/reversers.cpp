#include "qhr/reversers.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qhr/error.hpp"
#include "qhr/numeric.hpp"

namespace qhr {

namespace {

constexpr double kPointTol = 1e-7;

double scale_of(std::initializer_list<const QMatrix*> ms) {
  double s = 1.0;
  for (const QMatrix* m : ms) s = std::max(s, max_norm(*m));
  return s;
}

bool is_real_quaternion(const Quaternion& q) { return q.vector_norm() <= 1e-10; }

// Which fixed points of A are fixed by B; B's normal form is passed in.
struct SharedPoints {
  bool attracting = false;
  bool repelling = false;
  int count() const { return int(attracting) + int(repelling); }
};

SharedPoints shared_points(const HyperbolicData& na, const HyperbolicData& nb) {
  auto fixed = [&](const BoundaryPoint& p) {
    return same_point(p, nb.attracting, kPointTol) || same_point(p, nb.repelling, kPointTol);
  };
  return {fixed(na.attracting), fixed(na.repelling)};
}

void require_rank_one(const HermitianSpace& space) {
  if (space.form() == Form::Compact || space.n() != 1) {
    throw Error(ErrorKind::PreconditionViolated, "defined for Sp(1,1)");
  }
}

void require_member(const HermitianSpace& space, const QMatrix& m, double tol) {
  const double s = scale_of({&m});
  if (membership_residual(space, m) > tol * s * s) {
    throw Error(ErrorKind::NotGroupMember, "matrix does not preserve the form");
  }
}

}  // namespace

std::string_view to_string(SdrVerdict::Outcome o) {
  switch (o) {
    case SdrVerdict::Outcome::Yes: return "yes";
    case SdrVerdict::Outcome::No: return "no";
    case SdrVerdict::Outcome::Inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

ReverserSpace reverser_space(const std::vector<QMatrix>& gs, double rank_factor) {
  if (gs.empty()) throw Error(ErrorKind::DimensionMismatch, "no matrices given");
  const std::size_t m = gs.front().rows();
  for (const QMatrix& g : gs) {
    if (!g.is_square() || g.rows() != m) {
      throw Error(ErrorKind::DimensionMismatch, "matrices must be square of equal size");
    }
  }
  const Eigen::Index ambient = static_cast<Eigen::Index>(4 * m * m);
  Eigen::MatrixXd stacked(ambient * static_cast<Eigen::Index>(gs.size()), ambient);
  for (std::size_t k = 0; k < gs.size(); ++k) {
    const QMatrix& g = gs[k];
    const QMatrix g_inv = inverse(g);
    stacked.middleRows(static_cast<Eigen::Index>(k) * ambient, ambient) =
        real_operator(m, m, [&](const QMatrix& x) { return x * g - g_inv * x; });
  }
  const Eigen::MatrixXd kernel = null_space(stacked, rank_factor);
  ReverserSpace out;
  out.ambient_dim = static_cast<int>(ambient);
  out.dim = static_cast<int>(kernel.cols());
  for (Eigen::Index c = 0; c < kernel.cols(); ++c) out.basis.push_back(unflatten(m, m, kernel.col(c)));
  return out;
}

ReverserWitness make_witness(const HermitianSpace& space, const std::vector<QMatrix>& gs,
                             const QMatrix& c) {
  ReverserWitness w;
  w.C = c;
  const QMatrix c_inv = inverse(c);
  for (const QMatrix& g : gs) {
    w.residual_conj = std::max(w.residual_conj, max_distance(c * g * c_inv, inverse(g)));
  }
  const QMatrix sq = c * c;
  const QMatrix id = QMatrix::identity(c.rows());
  const double to_plus = max_distance(sq, id);
  const double to_minus = max_distance(sq, -id);
  w.square_sign = to_minus <= to_plus ? -1 : 1;
  w.residual_square = std::min(to_plus, to_minus);
  w.residual_group = membership_residual(space, c);
  return w;
}

bool witness_verifies(const ReverserWitness& w, const std::vector<QMatrix>& gs, double tol) {
  double gmax = 1.0;
  for (const QMatrix& g : gs) gmax = std::max(gmax, max_norm(g));
  const double c2 = std::pow(std::max(1.0, max_norm(w.C)), 2);
  return w.residual_conj <= tol * c2 * gmax && w.residual_square <= tol * c2 &&
         w.residual_group <= tol * c2;
}

bool reverser_coset_check(const std::vector<QMatrix>& gs, const QMatrix& h1, const QMatrix& h2,
                          double tol) {
  for (const QMatrix* h : {&h1, &h2}) {
    const QMatrix h_inv = inverse(*h);
    for (const QMatrix& g : gs) {
      const double s = scale_of({h, &h_inv, &g});
      if (max_distance(*h * g * h_inv, inverse(g)) > tol * s * s * s) {
        throw Error(ErrorKind::NotReverser, "matrix does not reverse the tuple");
      }
    }
  }
  const QMatrix z = inverse(h1) * h2;
  return std::all_of(gs.begin(), gs.end(), [&](const QMatrix& g) {
    const double s = scale_of({&z, &g});
    return max_distance(z * g, g * z) <= tol * s * s;
  });
}

// ------------------------------------------------------------------- Sp(1)

Quaternion sdr_sp1(const Quaternion& p1_in, const Quaternion& p2_in) {
  Quaternion p1 = p1_in;
  Quaternion p2 = p2_in;
  if (is_real_quaternion(p1)) std::swap(p1, p2);
  if (is_real_quaternion(p1)) return Quaternion::unit_j();

  // s carries p1's axis onto i, so s·p1·s⁻¹ is complex.
  const Quaternion s = rotation_between(p1.vector_part().normalized(), Quaternion::unit_i());
  const Quaternion s_inv = s.conj();
  const Complex c2 = split(s * p2 * s_inv).c2;
  const double theta1 = solve_orthogonal_phase(c2);
  return s_inv * (expi(theta1) * Quaternion::unit_j()) * s;
}

ReverserWitness sdr_sp1_witness(const Quaternion& p1, const Quaternion& p2) {
  const Quaternion q = sdr_sp1(p1, p2);
  return make_witness(HermitianSpace::compact(1), {QMatrix{{p1}}, QMatrix{{p2}}}, QMatrix{{q}});
}

// -------------------------------------------------------- hyperbolic pairs

QMatrix reverser_family_member(Complex b) {
  if (std::abs(b) == 0.0) throw Error(ErrorKind::ZeroParameter, "family parameter is zero");
  const Quaternion j = Quaternion::unit_j();
  return QMatrix{{0.0, Quaternion(b) * j}, {Quaternion(1.0 / std::conj(b)) * j, 0.0}};
}

QMatrix hyperbolic_reverser_family(const QMatrix& a, Complex b) {
  if (a.rows() != 2 || a.cols() != 2) {
    throw Error(ErrorKind::PreconditionViolated, "expected a 2x2 normal form");
  }
  const ComplexSplit lo = split(a(0, 0));
  const ComplexSplit hi = split(a(1, 1));
  const double r = std::abs(lo.c1);
  const bool normal = a(0, 1).norm() <= kIdentityTol && a(1, 0).norm() <= kIdentityTol &&
                      std::abs(lo.c2) <= kIdentityTol && std::abs(hi.c2) <= kIdentityTol &&
                      r > 0.0 && r < 1.0 && std::abs(hi.c1 - lo.c1 / (r * r)) <= 1e-9 / r;
  if (!normal) {
    throw Error(ErrorKind::PreconditionViolated, "expected diag(r e^{i theta}, r^-1 e^{i theta})");
  }
  return reverser_family_member(b);
}

ReverserWitness upgrade_reverser(const HermitianSpace& space, const QMatrix& a, const QMatrix& b,
                                 const QMatrix& c, double tol) {
  ReverserWitness w = make_witness(space, {a, b}, c);
  const double s = scale_of({&a, &b, &c});
  if (w.residual_conj > tol * s * s * s) {
    throw Error(ErrorKind::NotReverser, "matrix does not reverse both elements");
  }
  const double to_minus = max_distance(c * c, -QMatrix::identity(c.rows()));
  if (to_minus > tol * s * s) {
    throw Error(ErrorKind::SquareCheckFailed, "reverser of a hyperbolic pair does not square to -I");
  }
  w.square_sign = -1;
  w.residual_square = to_minus;
  return w;
}

SdrVerdict sdr_hyperbolic_common_fixed(const HermitianSpace& space, const QMatrix& a,
                                       const QMatrix& b, double tol) {
  require_rank_one(space);
  const HyperbolicData na = hyperbolic_normal_form(space, a);
  const HyperbolicData nb = hyperbolic_normal_form(space, b);
  const SharedPoints shared = shared_points(na, nb);

  SdrVerdict v;
  if (shared.count() == 0) {
    throw Error(ErrorKind::PreconditionViolated, "no common fixed point");
  }
  if (shared.count() == 1) {
    v.outcome = SdrVerdict::Outcome::No;
    v.certificate = "exactly one fixed point is shared";
    return v;
  }

  const QMatrix ca_inv = inverse(na.C_A);
  const QMatrix bd = ca_inv * b * na.C_A;
  const double off = std::max(bd(0, 1).norm(), bd(1, 0).norm());
  if (off > 1e-7 * scale_of({&bd})) {
    throw Error(ErrorKind::ConvergenceFailure, "B is not diagonal in A's eigenbasis");
  }
  const double psi = solve_orthogonal_phase(split(bd(0, 0)).c2);
  // Only the phase of the parameter is constrained. Its modulus s splits C into
  // s·upper + lower/s; balancing the two halves keeps |C| and the residuals small.
  const Quaternion ej = Quaternion(std::polar(1.0, psi)) * Quaternion::unit_j();
  QMatrix upper(2, 2), lower(2, 2);
  upper(0, 1) = ej;
  lower(1, 0) = ej;
  const double fu = frobenius(na.C_A * upper * ca_inv);
  const double fl = frobenius(na.C_A * lower * ca_inv);
  const Complex param = std::polar(std::sqrt(fl / fu), psi);
  const QMatrix c = na.C_A * reverser_family_member(param) * ca_inv;
  ReverserWitness w = make_witness(space, {a, b}, c);
  if (!witness_verifies(w, {a, b}, tol)) {
    throw Error(ErrorKind::ConvergenceFailure, "constructed reverser failed verification");
  }
  v.outcome = SdrVerdict::Outcome::Yes;
  v.certificate = "both fixed points are shared";
  v.quantities = {{"psi", psi}};
  v.t = param;
  v.witness = std::move(w);
  return v;
}

SdrVerdict cartan_necessary_condition(const HermitianSpace& space, const QMatrix& a,
                                      const QMatrix& b, double tol) {
  require_rank_one(space);
  const HyperbolicData na = hyperbolic_normal_form(space, a);
  const HyperbolicData nb = hyperbolic_normal_form(space, b);
  if (shared_points(na, nb).count() > 0) {
    throw Error(ErrorKind::CommonFixedPoint, "A and B share a fixed point");
  }
  const double angle_a = cartan_invariant(space, na.attracting, na.repelling, nb.attracting).angle;
  const double angle_b = cartan_invariant(space, na.repelling, na.attracting, nb.repelling).angle;
  SdrVerdict v;
  v.quantities = {{"angle_a", angle_a}, {"angle_b", angle_b}};
  if (std::abs(angle_a - angle_b) > tol) {
    v.outcome = SdrVerdict::Outcome::No;
    v.certificate = "angular invariants differ";
  } else {
    v.outcome = SdrVerdict::Outcome::Inconclusive;
    v.certificate = "angular invariants agree; the condition is only necessary";
  }
  return v;
}

namespace {

struct TSolve {
  std::optional<Complex> t;
  std::string reason;
};

// Solves Re(a2 t̄) = Re(d2 t̄) = 0, b1 = |t|² c1, b2 = −t² conj(c2) for t ≠ 0.
TSolve solve_t(Complex a2, Complex d2, Complex b1, Complex b2, Complex c1, Complex c2, double eps,
               double rel) {
  auto is_zero = [&](Complex z) { return std::abs(z) <= eps; };
  auto positive_real = [&](Complex z, double& out) {
    if (std::abs(z.imag()) > rel * std::max(1.0, std::abs(z)) || z.real() <= rel) return false;
    out = z.real();
    return true;
  };

  std::optional<Complex> dir;  // unit direction of t when constrained
  if (!is_zero(a2)) {
    dir = Complex(0, 1) * a2 / std::abs(a2);
    if (!is_zero(d2) && std::abs((d2 * std::conj(*dir)).real()) > rel * std::abs(d2)) {
      return {std::nullopt, "Re(a2 conj t) = 0 and Re(d2 conj t) = 0 force t = 0"};
    }
  } else if (!is_zero(d2)) {
    dir = Complex(0, 1) * d2 / std::abs(d2);
  }

  double mod2 = 0.0;  // |t|² when fixed by b1 = |t|² c1
  bool mod_fixed = false;
  if (!is_zero(c1)) {
    if (!positive_real(b1 / c1, mod2)) return {std::nullopt, "b1 / c1 is not a positive real"};
    mod_fixed = true;
  } else if (!is_zero(b1)) {
    return {std::nullopt, "c1 = 0 but b1 != 0"};
  }

  if (is_zero(c2)) {
    if (!is_zero(b2)) return {std::nullopt, "c2 = 0 but b2 != 0"};
    const double mag = mod_fixed ? std::sqrt(mod2) : 1.0;
    return {dir.value_or(Complex(1, 0)) * mag, ""};
  }

  const Complex t2 = -b2 / std::conj(c2);
  if (std::abs(t2) <= rel) return {std::nullopt, "b2 = 0 forces t = 0"};
  Complex t;
  if (dir) {
    double s2 = 0.0;
    if (!positive_real(t2 / (*dir * *dir), s2)) {
      return {std::nullopt, "b2 = -t^2 conj(c2) is incompatible with the direction of t"};
    }
    t = *dir * std::sqrt(s2);
  } else {
    t = std::sqrt(t2);
  }
  if (mod_fixed && std::abs(std::norm(t) - mod2) > rel * std::max(1.0, mod2)) {
    return {std::nullopt, "|b2 / c2| != b1 / c1"};
  }
  return {t, ""};
}

}  // namespace

SdrVerdict sdr_vs_standard_predicate(const QMatrix& b, double r, double theta, double tol) {
  const HermitianSpace space = HermitianSpace::h1(1);
  if (b.rows() != 2 || b.cols() != 2) {
    throw Error(ErrorKind::DimensionMismatch, "expected a 2x2 matrix");
  }
  require_member(space, b, tol);

  const ComplexSplit a = split(b(0, 0));
  const ComplexSplit bb = split(b(0, 1));
  const ComplexSplit c = split(b(1, 0));
  const ComplexSplit d = split(b(1, 1));
  const double scale = scale_of({&b});
  const double eps = tol * scale;
  const double rel = std::max(tol, 1e-12);

  SdrVerdict v;
  v.quantities = {{"abs_a2", std::abs(a.c2)}, {"abs_d2", std::abs(d.c2)},
                  {"abs_b1", std::abs(bb.c1)}, {"abs_b2", std::abs(bb.c2)},
                  {"abs_c1", std::abs(c.c1)},  {"abs_c2", std::abs(c.c2)}};

  const TSolve sol = solve_t(a.c2, d.c2, bb.c1, bb.c2, c.c1, c.c2, eps, rel);
  bool yes = false;
  if (sol.t) {
    const QMatrix a_normal = QMatrix::diagonal(
        {Quaternion(std::polar(r, theta)), Quaternion(std::polar(1.0 / r, theta))});
    const QMatrix cw = reverser_family_member(*sol.t);
    ReverserWitness w = make_witness(space, {a_normal, b}, cw);
    if (witness_verifies(w, {a_normal, b}, std::max(tol, 1e-9))) {
      yes = true;
      v.outcome = SdrVerdict::Outcome::Yes;
      v.certificate = "C(t) reverses A and B";
      v.t = sol.t;
      v.witness = std::move(w);
    } else {
      v.outcome = SdrVerdict::Outcome::Inconclusive;
      v.certificate = "solution t found but the witness failed verification";
    }
  } else {
    v.outcome = SdrVerdict::Outcome::No;
    v.certificate = sol.reason;
  }

  const bool closed_applicable = std::abs(a.c2) > eps && std::abs(d.c2) > eps &&
                                 std::abs(c.c1) > eps && std::abs(c.c2) > eps;
  if (closed_applicable) {
    const double a2sq = std::norm(a.c2);
    const Complex lhs = bb.c2 * c.c1 * a2sq;
    const Complex rhs = bb.c1 * std::conj(c.c2) * a.c2 * a.c2;
    const bool cond_products =
        std::abs(lhs - rhs) <= rel * std::max({1.0, std::abs(lhs), std::abs(rhs)});
    const Complex lambda = a.c2 / d.c2;
    const bool cond_parallel = std::abs(lambda.imag()) <= rel * std::max(1.0, std::abs(lambda));
    const Complex ratio = bb.c1 / c.c1;
    const bool cond_ratio = std::abs(ratio.imag()) <= rel * std::max(1.0, std::abs(ratio)) &&
                            ratio.real() >= -rel;
    const bool closed = cond_products && cond_parallel && cond_ratio;
    v.closed_form_agrees = closed == yes;
  }
  return v;
}

bool fixed_point_permutation_check(const HermitianSpace& space, const QMatrix& a,
                                   const QMatrix& i1, const QMatrix& i2, double tol) {
  const double s = scale_of({&a, &i1, &i2});
  const QMatrix minus_id = -QMatrix::identity(a.rows());
  if (max_distance(i1 * i2, a) > tol * s * s || max_distance(i1 * i1, minus_id) > tol * s * s ||
      max_distance(i2 * i2, minus_id) > tol * s * s) {
    throw Error(ErrorKind::NotFactorization, "not a factorization into skew-involutions");
  }
  const HyperbolicData na = hyperbolic_normal_form(space, a);
  for (const QMatrix* im : {&i1, &i2}) {
    if (!same_point(apply(space, *im, na.attracting), na.repelling, kPointTol) ||
        !same_point(apply(space, *im, na.repelling), na.attracting, kPointTol)) {
      return false;
    }
  }
  return true;
}

SdrVerdict sdr_sp11(const HermitianSpace& space, const QMatrix& a, const QMatrix& b, double tol) {
  if (!space.indefinite()) throw Error(ErrorKind::PreconditionViolated, "expected an Sp(n,1) model");
  require_member(space, a, tol);
  require_member(space, b, tol);
  const bool ha = is_hyperbolic(a);
  const bool hb = is_hyperbolic(b);

  // Every reverser of a loxodromic A lies in the family, so the entry
  // predicate decides the pair whatever the type of B.
  if (space.n() == 1 && ha) {
    const HyperbolicData na = hyperbolic_normal_form(space, a);
    if (hb && shared_points(na, hyperbolic_normal_form(space, b)).count() > 0) {
      return sdr_hyperbolic_common_fixed(space, a, b, tol);
    }

    const QMatrix ca_inv = inverse(na.C_A);
    const QMatrix bn = ca_inv * b * na.C_A;
    SdrVerdict v = sdr_vs_standard_predicate(bn, na.r, na.theta, std::max(tol, 1e-9));
    if (hb) {
      try {
        const SdrVerdict cartan = cartan_necessary_condition(space, a, b);
        v.quantities.insert(v.quantities.end(), cartan.quantities.begin(), cartan.quantities.end());
      } catch (const Error&) {
        // Angles are diagnostics only.
      }
    }
    if (v.outcome == SdrVerdict::Outcome::Yes) {
      ReverserWitness w = make_witness(space, {a, b}, na.C_A * v.witness->C * ca_inv);
      if (!witness_verifies(w, {a, b}, std::max(tol, 1e-9))) {
        v.outcome = SdrVerdict::Outcome::Inconclusive;
        v.certificate = "witness failed verification after change of basis";
        v.witness.reset();
      } else {
        v.witness = std::move(w);
      }
    } else if (v.outcome == SdrVerdict::Outcome::No && std::abs(std::sin(na.theta)) < 1e-9) {
      // For real eigenvalue classes the family misses some reversers.
      v.outcome = SdrVerdict::Outcome::Inconclusive;
      v.certificate = "no family reverser; real eigenvalues admit reversers outside the family";
    }
    return v;
  }
  if (space.n() == 1 && hb && !ha) return sdr_sp11(space, b, a, tol);

  const ReverserSpace rs = reverser_space({a, b});
  SdrVerdict v;
  v.quantities = {{"reverser_space_dim", static_cast<double>(rs.dim)}};
  if (rs.dim == 0) {
    v.outcome = SdrVerdict::Outcome::No;
    v.certificate = "reverser space is trivial";
  } else {
    v.outcome = SdrVerdict::Outcome::Inconclusive;
    v.certificate = "nontrivial reverser space and no decision procedure for this pair";
  }
  return v;
}

InvolutionTriple involution_triple(const ReverserWitness& w, const QMatrix& g1, const QMatrix& g2) {
  InvolutionTriple t;
  t.square_sign = w.square_sign;
  const double s = static_cast<double>(w.square_sign);
  t.i1 = w.C;
  t.i2 = w.C * g1 * s;
  t.i3 = w.C * g2 * s;
  const QMatrix sid = QMatrix::identity(w.C.rows()) * s;
  t.residual = std::max({max_distance(t.i1 * t.i2, g1), max_distance(t.i1 * t.i3, g2),
                         max_distance(t.i1 * t.i1, sid), max_distance(t.i2 * t.i2, sid),
                         max_distance(t.i3 * t.i3, sid)});
  return t;
}

}  // namespace qhr
