#include "cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "qhr/error.hpp"
#include "qhr/json_io.hpp"

namespace qhr::cli {

namespace {

constexpr double kDefaultTol = 1e-9;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string input = "-";
  std::optional<double> tol;
  std::uint64_t seed = 0;
  std::string form;
  std::string group;
  std::string output = "json";
  int trials = 1000;
  int max_n = 2;
  unsigned threads = 0;
};

double resolve_tol(const Options& o) {
  if (o.tol) return *o.tol;
  if (const char* env = std::getenv("QHR_TOL")) {
    try {
      std::size_t used = 0;
      const double v = std::stod(env, &used);
      if (used == std::string(env).size() && v > 0.0) return v;
    } catch (const std::exception&) {
    }
    throw UsageError("QHR_TOL is not a positive number");
  }
  return kDefaultTol;
}

Json read_input(const Options& o, std::istream& in) {
  std::string text;
  if (o.input == "-") {
    text.assign(std::istreambuf_iterator<char>(in), {});
  } else {
    std::ifstream f(o.input);
    if (!f) throw UsageError("cannot open input '" + o.input + "'");
    text.assign(std::istreambuf_iterator<char>(f), {});
  }
  return Json::parse(text);  // throws parse_error
}

const Json& field(const Json& doc, const char* key) {
  if (!doc.is_object() || !doc.contains(key)) {
    throw Error(ErrorKind::MalformedInput, std::string("missing field '") + key + "'");
  }
  return doc.at(key);
}

const Json& matrix_field(const Json& doc) {
  return doc.is_object() && doc.contains("matrix") ? doc.at("matrix") : doc;
}

Form resolve_form(const Options& o, const Json& doc) {
  if (!o.form.empty()) return parse_form(o.form);
  if (doc.is_object() && doc.contains("form") && doc.at("form").is_string()) {
    return parse_form(doc.at("form").get<std::string>());
  }
  return Form::H1;
}

HermitianSpace space_for(Form form, const QMatrix& m) {
  if (!m.is_square() || m.rows() < 2) {
    throw Error(ErrorKind::DimensionMismatch, "expected a square matrix of size at least 2");
  }
  return HermitianSpace::make(form, static_cast<int>(m.rows()) - 1);
}

// ------------------------------------------------------------- subcommands

Json cmd_classify(const Options& o, const Json& doc) {
  const QMatrix m = matrix_from_json(matrix_field(doc));
  const Form form = resolve_form(o, doc);
  Json out = to_json(classify(space_for(form, m), m, resolve_tol(o)));
  out["form"] = std::string(to_string(form));
  return out;
}

Json cmd_normal_form(const Options& o, const Json& doc) {
  const QMatrix m = matrix_from_json(matrix_field(doc));
  const Form form = resolve_form(o, doc);
  Json out = to_json(hyperbolic_normal_form(space_for(form, m), m, resolve_tol(o)));
  out["form"] = std::string(to_string(form));
  return out;
}

Json cmd_cartan(const Options& o, const Json& doc) {
  const Form form = resolve_form(o, doc);
  int n = 1;
  if (doc.is_object() && doc.contains("n")) {
    if (!doc.at("n").is_number_integer()) throw Error(ErrorKind::MalformedInput, "n must be an integer");
    n = doc.at("n").get<int>();
  }
  const HermitianSpace space = HermitianSpace::make(form, n);
  // Lifts of boundary points only need to be null up to a loose tolerance.
  const double lift_tol = std::max(resolve_tol(o), 1e-9);
  if (doc.is_object() && doc.contains("points")) {
    const Json& pts = doc.at("points");
    if (!pts.is_array() || pts.size() != 3) throw Error(ErrorKind::MalformedInput, "points must hold three entries");
    const BoundaryPoint p1 = point_from_json(space, pts[0], lift_tol);
    const BoundaryPoint p2 = point_from_json(space, pts[1], lift_tol);
    const BoundaryPoint p3 = point_from_json(space, pts[2], lift_tol);
    return to_json(cartan_invariant(space, p1, p2, p3));
  }
  const BoundaryPoint a_a = point_from_json(space, field(doc, "aA"), lift_tol);
  const BoundaryPoint r_a = point_from_json(space, field(doc, "rA"), lift_tol);
  const BoundaryPoint a_b = point_from_json(space, field(doc, "aB"), lift_tol);
  const BoundaryPoint r_b = point_from_json(space, field(doc, "rB"), lift_tol);
  const QMatrix c = interchanging_skew_involution(space, a_a, r_a, a_b, r_b);
  return {{"C", to_json(c)},
          {"angles",
           {cartan_invariant(space, a_a, r_a, a_b).angle, cartan_invariant(space, r_a, a_a, r_b).angle}}};
}

template <int N>
Json triple_json(const RotationTriple<N>& t) {
  return {{"i1", real_matrix_to_json(t.inv[0])},
          {"i2", real_matrix_to_json(t.inv[1])},
          {"i3", real_matrix_to_json(t.inv[2])}};
}

template <int N>
Eigen::Matrix<double, N, N> fixed_matrix(const Json& j) {
  const Eigen::MatrixXd m = real_matrix_from_json(j);
  if (m.rows() != N || m.cols() != N) throw Error(ErrorKind::DimensionMismatch, "wrong rotation size");
  return m;
}

Json cmd_sdr(const Options& o, const Json& doc) {
  std::string group = o.group;
  if (group.empty() && doc.is_object() && doc.contains("group") && doc.at("group").is_string()) {
    group = doc.at("group").get<std::string>();
  }
  const double tol = resolve_tol(o);
  const Json& g1 = field(doc, "g1");
  const Json& g2 = field(doc, "g2");

  if (group == "sp1") {
    const Quaternion p1 = matrix_from_json(g1)(0, 0);
    const Quaternion p2 = matrix_from_json(g2)(0, 0);
    if (std::abs(p1.norm() - 1.0) > tol * 10 || std::abs(p2.norm() - 1.0) > tol * 10) {
      throw Error(ErrorKind::NotUnit, "Sp(1) elements must be unit quaternions");
    }
    const ReverserWitness w = sdr_sp1_witness(p1, p2);
    if (!witness_verifies(w, {QMatrix{{p1}}, QMatrix{{p2}}}, tol) || w.square_sign != -1) {
      throw Error(ErrorKind::ConvergenceFailure, "witness failed re-verification");
    }
    return {{"outcome", "yes"},
            {"group", group},
            {"witness", to_json(w.C(0, 0))},
            {"residuals", {{"conj", w.residual_conj}, {"square", w.residual_square}}}};
  }
  if (group == "so3" || group == "so4") {
    Json out = {{"outcome", "yes"}, {"group", group}};
    double residual = 0.0;
    if (group == "so3") {
      const auto t = sdr_so3(fixed_matrix<3>(g1), fixed_matrix<3>(g2), tol);
      residual = t.residual;
      out["witness"] = triple_json(t);
    } else {
      const auto t = sdr_so4(fixed_matrix<4>(g1), fixed_matrix<4>(g2), tol);
      residual = t.residual;
      out["witness"] = triple_json(t);
    }
    if (residual > tol) throw Error(ErrorKind::ConvergenceFailure, "witness failed re-verification");
    out["residuals"] = {{"max", residual}};
    return out;
  }
  if (group == "sp11") {
    const QMatrix a = matrix_from_json(g1);
    const QMatrix b = matrix_from_json(g2);
    const Form form = resolve_form(o, doc);
    const HermitianSpace space = space_for(form, a);
    const SdrVerdict v = sdr_sp11(space, a, b, tol);
    if (v.outcome == SdrVerdict::Outcome::Yes) {
      const ReverserWitness w = make_witness(space, {a, b}, v.witness->C);
      if (!witness_verifies(w, {a, b}, tol)) {
        throw Error(ErrorKind::ConvergenceFailure, "witness failed re-verification");
      }
    }
    Json out = to_json(v);
    out["group"] = group;
    out["form"] = std::string(to_string(form));
    return out;
  }
  throw Error(ErrorKind::UnknownGroup, "group must be sp1, so3, so4 or sp11");
}

Json cmd_so4_decompose(const Options& o, const Json& doc) {
  const Rot4 r = fixed_matrix<4>(matrix_field(doc));
  const auto [p, q] = so4_factor(r, resolve_tol(o));
  return {{"left", to_json(p)},
          {"right", to_json(q)},
          {"residual", (rotation4(p, q) - r).cwiseAbs().maxCoeff()}};
}

Json cmd_reverser_space(const Options&, const Json& doc) {
  const Json& ms = doc.is_array() ? doc : field(doc, "matrices");
  if (!ms.is_array()) throw Error(ErrorKind::MalformedInput, "matrices must be an array");
  std::vector<QMatrix> gs;
  for (const Json& m : ms) gs.push_back(matrix_from_json(m));
  return to_json(reverser_space(gs));
}

Json cmd_experiment(const Options& o) {
  if (o.group.empty()) throw UsageError("--group is required");
  return to_json(genericity_experiment(parse_group(o.group), o.trials, o.seed, o.threads));
}

Json cmd_lie_dims(const Options& o) {
  Json rows = Json::array();
  bool all = true;
  for (const AuditRow& row : dimension_audit(o.max_n)) {
    all = all && row.match();
    rows.push_back(to_json(row));
  }
  return {{"rows", std::move(rows)}, {"all_match", all}};
}

// ------------------------------------------------------------------ output

void flatten(const Json& j, const std::string& prefix,
             std::vector<std::pair<std::string, std::string>>& lines) {
  if (j.is_object() && !(j.contains("rows") && j.contains("entries"))) {
    for (const auto& [k, v] : j.items()) flatten(v, prefix.empty() ? k : prefix + "." + k, lines);
    return;
  }
  if (j.is_array() && !j.empty() && j[0].is_object()) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "[" + std::to_string(i) + "]", lines);
    return;
  }
  lines.emplace_back(prefix, j.is_string() ? j.get<std::string>() : j.dump());
}

std::string render(const Json& result, const std::string& mode) {
  if (mode == "json") return result.dump() + "\n";
  std::vector<std::pair<std::string, std::string>> lines;
  flatten(result, "", lines);
  std::size_t width = 0;
  for (const auto& l : lines) width = std::max(width, l.first.size());
  std::ostringstream os;
  for (const auto& [k, v] : lines) os << k << std::string(width - k.size() + 2, ' ') << v << "\n";
  return os.str();
}

void report(std::ostream& err, std::string_view kind, std::string_view message) {
  err << Json{{"error", kind}, {"message", message}}.dump() << "\n";
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Quaternionic hyperbolic isometries and reversibility"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&](CLI::App* sub, bool takes_input) {
    if (takes_input) sub->add_option("input", o.input, "JSON input file, or - for stdin");
    sub->add_option("--tol", o.tol, "tolerance (overrides QHR_TOL)")->check(CLI::PositiveNumber);
    sub->add_option("--form", o.form, "Hermitian form")->check(CLI::IsMember({"h1", "h0"}));
    sub->add_option("--output", o.output, "output format")->check(CLI::IsMember({"json", "table"}));
  };

  struct Entry {
    CLI::App* app;
    std::function<Json(const Json&)> run_doc;
    std::function<Json()> run_plain;
  };
  std::vector<Entry> entries;
  auto with_input = [&](const char* name, const char* help, Json (*fn)(const Options&, const Json&)) {
    CLI::App* sub = app.add_subcommand(name, help);
    add_common(sub, true);
    entries.push_back({sub, [&o, fn](const Json& d) { return fn(o, d); }, nullptr});
    return sub;
  };
  with_input("classify", "classify an isometry", cmd_classify);
  with_input("normal-form", "hyperbolic normal form", cmd_normal_form);
  with_input("cartan", "angular invariant or interchanging skew-involution", cmd_cartan);
  CLI::App* sdr = with_input("sdr", "strong double reversibility of a pair", cmd_sdr);
  sdr->add_option("--group", o.group, "sp1, so3, so4 or sp11");
  with_input("so4-decompose", "left and right quaternion factors of an SO(4) element",
             cmd_so4_decompose);
  with_input("reverser-space", "linear space of reversing matrices", cmd_reverser_space);

  CLI::App* exp = app.add_subcommand("experiment", "Monte Carlo genericity experiment");
  add_common(exp, false);
  exp->add_option("--group", o.group, "sp1, sp2, so4 or sp11");
  exp->add_option("--trials", o.trials, "number of sampled pairs")->check(CLI::PositiveNumber);
  exp->add_option("--seed", o.seed, "master seed");
  exp->add_option("--threads", o.threads, "worker threads (0: all cores)");
  entries.push_back({exp, nullptr, [&o] { return cmd_experiment(o); }});

  CLI::App* lie = app.add_subcommand("lie-dims", "Lie algebra dimension audit");
  add_common(lie, false);
  lie->add_option("--max-n", o.max_n, "largest n")->check(CLI::Range(1, 3));
  entries.push_back({lie, nullptr, [&o] { return cmd_lie_dims(o); }});

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    report(err, "UsageError", e.what());
    return 2;
  }

  try {
    for (const Entry& e : entries) {
      if (!e.app->parsed()) continue;
      const Json result = e.run_doc ? e.run_doc(read_input(o, in)) : e.run_plain();
      out << render(result, o.output);
      return 0;
    }
    report(err, "UsageError", "no subcommand");
    return 2;
  } catch (const UsageError& e) {
    report(err, "UsageError", e.what());
    return 2;
  } catch (const Json::exception& e) {
    report(err, "ParseError", e.what());
    return 2;
  } catch (const Error& e) {
    const std::string_view msg = std::string_view(e.what()).substr(e.name().size() + 2);
    report(err, e.name(), msg);
    return e.kind() == ErrorKind::MalformedInput || e.kind() == ErrorKind::UnknownGroup ? 2 : 1;
  } catch (const std::exception& e) {
    report(err, "InternalError", e.what());
    return 1;
  }
}

}  // namespace qhr::cli
