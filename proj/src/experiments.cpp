#include "qhr/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <thread>

#include "qhr/error.hpp"
#include "qhr/numeric.hpp"
#include "qhr/reversers.hpp"
#include "qhr/spectral.hpp"

namespace qhr {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Quaternion gaussian_quaternion(Rng& rng) {
  std::normal_distribution<double> n01;
  const double w = n01(rng);
  const double x = n01(rng);
  const double y = n01(rng);
  const double z = n01(rng);
  return {w, x, y, z};
}

double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

QMatrix sample_generator(int kind, Rng& rng) {
  if (kind == 1) {
    const double r = uniform(rng, 0.5, 0.9);
    const double theta = uniform(rng, 0.0, 2.0 * std::numbers::pi);
    return QMatrix::diagonal({Quaternion(std::polar(r, theta)), Quaternion(std::polar(1.0 / r, theta))});
  }
  if (kind == 0) {
    Quaternion x = gaussian_quaternion(rng).vector_part();
    const double nx = x.norm();
    if (nx > 0.0) x = x * (uniform(rng, 0.0, 1.0) / nx);
    return QMatrix{{1.0, 0.0}, {x, 1.0}};
  }
  const double psi = uniform(rng, 0.0, 2.0 * std::numbers::pi);
  return reverser_family_member(std::polar(std::exp(uniform(rng, -0.5, 0.5)), psi));
}

// Dimension of {X real 4x4 : X·R = Rᵀ·X for both R}.
int real_reverser_dim(const Rot4& r1, const Rot4& r2) {
  const Eigen::Matrix4d id = Eigen::Matrix4d::Identity();
  Eigen::MatrixXd op(32, 16);
  int row = 0;
  for (const Rot4* r : {&r1, &r2}) {
    // vec(X R) − vec(Rᵀ X) in column-major vec.
    Eigen::MatrixXd block(16, 16);
    for (int a = 0; a < 4; ++a) {
      for (int b = 0; b < 4; ++b) {
        for (int c = 0; c < 4; ++c) {
          for (int d = 0; d < 4; ++d) {
            block(a * 4 + b, c * 4 + d) = (*r)(c, a) * id(b, d) - id(a, c) * (*r)(d, b);
          }
        }
      }
    }
    op.middleRows(row, 16) = block;
    row += 16;
  }
  return 16 - numerical_rank(op);
}

enum class TrialOutcome { Yes, No, Inconclusive };

struct TrialResult {
  int dim = 0;
  TrialOutcome outcome = TrialOutcome::Inconclusive;
  double residual = -1.0;  // witness residual, if any
  std::string class_a;
  std::string class_b;
};

double witness_residual(const ReverserWitness& w) {
  return std::max({w.residual_conj, w.residual_square, w.residual_group});
}

TrialResult run_trial(GroupTag group, Rng& rng) {
  TrialResult t;
  switch (group) {
    case GroupTag::Sp1: {
      const Quaternion p1 = sample_sp1(rng);
      const Quaternion p2 = sample_sp1(rng);
      const ReverserWitness w = sdr_sp1_witness(p1, p2);
      t.residual = witness_residual(w);
      t.outcome = t.residual < kConstructionTol ? TrialOutcome::Yes : TrialOutcome::Inconclusive;
      t.dim = reverser_space({QMatrix{{p1}}, QMatrix{{p2}}}).dim;
      break;
    }
    case GroupTag::So4: {
      const Quaternion p1 = sample_sp1(rng);
      const Quaternion q1 = sample_sp1(rng);
      const Quaternion p2 = sample_sp1(rng);
      const Quaternion q2 = sample_sp1(rng);
      const Rot4 r1 = rotation4(p1, q1);
      const Rot4 r2 = rotation4(p2, q2);
      const RotationTriple<4> tri = sdr_so4(r1, r2);
      t.residual = tri.residual;
      t.outcome = t.residual < kConstructionTol ? TrialOutcome::Yes : TrialOutcome::Inconclusive;
      t.dim = real_reverser_dim(r1, r2);
      break;
    }
    case GroupTag::Sp2: {
      const QMatrix g1 = sample_compact(2, rng);
      const QMatrix g2 = sample_compact(2, rng);
      t.dim = reverser_space({g1, g2}).dim;
      t.outcome = t.dim == 0 ? TrialOutcome::No : TrialOutcome::Inconclusive;
      break;
    }
    case GroupTag::Sp11: {
      const HermitianSpace space = HermitianSpace::h1(1);
      const QMatrix g1 = sample_sp11(rng);
      const QMatrix g2 = sample_sp11(rng);
      for (auto [g, label] : {std::pair{&g1, &t.class_a}, std::pair{&g2, &t.class_b}}) {
        try {
          *label = std::string(to_string(classify(space, *g, 1e-8).verdict));
        } catch (const Error&) {
          *label = "unclassified";
        }
      }
      t.dim = reverser_space({g1, g2}).dim;
      if (t.dim == 0) {
        t.outcome = TrialOutcome::No;
        break;
      }
      try {
        const SdrVerdict v = sdr_sp11(space, g1, g2, 1e-8);
        if (v.outcome == SdrVerdict::Outcome::Yes) {
          t.outcome = TrialOutcome::Yes;
          t.residual = witness_residual(*v.witness);
        }
      } catch (const Error&) {
        t.outcome = TrialOutcome::Inconclusive;
      }
      break;
    }
  }
  return t;
}

}  // namespace

Rng trial_rng(std::uint64_t seed, std::uint64_t index) {
  return Rng(splitmix64(splitmix64(seed) ^ splitmix64(index + 0x632be59bd9b4e019ULL)));
}

Quaternion sample_sp1(Rng& rng) {
  for (;;) {
    const Quaternion q = gaussian_quaternion(rng);
    if (q.norm() > 1e-12) return q.normalized();
  }
}

QMatrix sample_compact(int n, Rng& rng) {
  if (n < 1) throw Error(ErrorKind::PreconditionViolated, "n must be positive");
  const HermitianSpace space = HermitianSpace::compact(n);
  const std::size_t m = static_cast<std::size_t>(n);
  for (;;) {
    QMatrix out(m, m);
    bool ok = true;
    for (std::size_t c = 0; c < m && ok; ++c) {
      QMatrix v(m, 1);
      for (std::size_t r = 0; r < m; ++r) v[r] = gaussian_quaternion(rng);
      for (std::size_t k = 0; k < c; ++k) {
        const QMatrix e = out.col(k);
        v -= e * hermitian_product(space, v, e);
      }
      const double nv = vector_norm(v);
      ok = nv > 1e-8;
      if (ok) out.set_col(c, v * (1.0 / nv));
    }
    if (ok) return out;
  }
}

QMatrix sample_sp11(Rng& rng) {
  QMatrix g = QMatrix::identity(2);
  // Letter types cycle unipotent, diagonal, anti-diagonal; a word built from
  // one type alone stays in a subgroup with a common fixed point.
  for (int k = 0; k < 8; ++k) g = g * sample_generator(k % 3, rng);
  return g;
}

std::string_view to_string(GroupTag g) {
  switch (g) {
    case GroupTag::Sp1: return "sp1";
    case GroupTag::Sp2: return "sp2";
    case GroupTag::So4: return "so4";
    case GroupTag::Sp11: return "sp11";
  }
  return "sp1";
}

GroupTag parse_group(std::string_view tag) {
  for (GroupTag g : {GroupTag::Sp1, GroupTag::Sp2, GroupTag::So4, GroupTag::Sp11}) {
    if (tag == to_string(g)) return g;
  }
  throw Error(ErrorKind::UnknownGroup, "unknown group '" + std::string(tag) + "'");
}

ExperimentReport genericity_experiment(GroupTag group, int trials, std::uint64_t seed,
                                       unsigned threads) {
  if (trials <= 0) throw Error(ErrorKind::PreconditionViolated, "trials must be positive");
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(trials));

  std::vector<TrialResult> results(static_cast<std::size_t>(trials));
  std::vector<std::exception_ptr> failures(threads);
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < threads; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = w; i < results.size(); i += threads) {
          Rng rng = trial_rng(seed, i);
          results[i] = run_trial(group, rng);
        }
      } catch (...) {
        failures[w] = std::current_exception();
      }
    });
  }
  for (std::thread& t : pool) t.join();
  for (const auto& f : failures) {
    if (f) std::rethrow_exception(f);
  }

  ExperimentReport rep;
  rep.group = group;
  rep.trials = trials;
  rep.seed = seed;
  double sum = 0.0;
  for (const TrialResult& t : results) {
    ++rep.dim_histogram[t.dim];
    switch (t.outcome) {
      case TrialOutcome::Yes: ++rep.sdr_yes; break;
      case TrialOutcome::No: ++rep.certified_no; break;
      case TrialOutcome::Inconclusive: ++rep.inconclusive; break;
    }
    if (t.residual >= 0.0) {
      rep.residuals.max = std::max(rep.residuals.max, t.residual);
      sum += t.residual;
      ++rep.residuals.count;
    }
    if (!t.class_a.empty()) ++rep.classes[t.class_a];
    if (!t.class_b.empty()) ++rep.classes[t.class_b];
  }
  if (rep.residuals.count > 0) rep.residuals.mean = sum / rep.residuals.count;
  rep.fraction_sdr = static_cast<double>(rep.sdr_yes) / trials;
  rep.fraction_dim_zero = static_cast<double>(rep.dim_histogram[0]) / trials;
  switch (group) {
    case GroupTag::Sp1:
    case GroupTag::So4:
      rep.note = "every pair is expected to be strongly doubly reversible";
      break;
    case GroupTag::Sp2:
      rep.note = "Haar sampling; dimension 0 certifies non-reversibility, larger dimensions are inconclusive";
      break;
    case GroupTag::Sp11:
      rep.note = "proxy: random generator words, not Haar measure; dimension 0 certifies non-reversibility";
      break;
  }
  return rep;
}

std::vector<AuditRow> dimension_audit(int max_n) {
  if (max_n < 1 || max_n > 3) throw Error(ErrorKind::PreconditionViolated, "max_n must be in [1, 3]");
  std::vector<AuditRow> rows;
  const Quaternion i = Quaternion::unit_i();
  for (int n = 1; n <= max_n; ++n) {
    const std::size_t m = static_cast<std::size_t>(n);
    {
      const HermitianSpace space = HermitianSpace::h1(n);
      AuditRow row{"sp(n,1)", n, "i*I", {}, {}};
      row.computed = ad_eigenspace_dims(space, QMatrix::scalar(m + 1, i));
      row.formula = {(n + 1) * (2 * n + 3), (n + 1) * (n + 1), (n + 1) * (n + 2)};
      rows.push_back(row);
    }
    {
      AuditRow row{"sp(n)", n, "i*I", {}, {}};
      row.computed = compact_ad_dims(n, QMatrix::scalar(m, i));
      row.formula = {n * (2 * n + 1), n * n, n * (n + 1)};
      rows.push_back(row);
    }
    for (int k = 1; k < n; ++k) {
      std::vector<Quaternion> diag(m, Quaternion(-1.0));
      std::fill(diag.begin(), diag.begin() + k, Quaternion(1.0));
      AuditRow row{"sp(n)", n, "diag(I_" + std::to_string(k) + ", -I_" + std::to_string(n - k) + ")",
                   {}, {}};
      row.computed = compact_ad_dims(n, QMatrix::diagonal(diag));
      const int l = n - k;
      row.formula = {n * (2 * n + 1), k * (2 * k + 1) + l * (2 * l + 1), 4 * k * l};
      rows.push_back(row);
    }
  }
  return rows;
}

}  // namespace qhr
