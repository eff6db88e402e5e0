#include "qhr/json_io.hpp"

#include <string>

#include "qhr/error.hpp"

namespace qhr {

namespace {

[[noreturn]] void malformed(const std::string& what) {
  throw Error(ErrorKind::MalformedInput, what);
}

double number(const Json& j, const char* what) {
  if (!j.is_number()) malformed(std::string(what) + " must be a number");
  return j.get<double>();
}

}  // namespace

Json to_json(const Quaternion& q) { return Json::array({q.w, q.x, q.y, q.z}); }

Json to_json(Complex c) { return Json::array({c.real(), c.imag()}); }

Json to_json(const QMatrix& m) {
  Json entries = Json::array();
  for (const Quaternion& q : m.entries()) entries.push_back(to_json(q));
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(entries)}};
}

Json to_json(const BoundaryPoint& p) {
  return {{"lift", to_json(p.lift)}, {"at_infinity", p.at_infinity}};
}

Json to_json(const EigenPair& e) {
  static constexpr const char* kSigns[] = {"negative", "zero", "positive"};
  return {{"class", to_json(e.cls.rep)},
          {"modulus", e.cls.modulus},
          {"vector", to_json(e.vector)},
          {"norm_sign", kSigns[static_cast<int>(e.herm_norm_sign)]}};
}

Json to_json(const HyperbolicData& h) {
  return {{"r", h.r},
          {"theta", h.theta},
          {"phis", h.phis},
          {"attracting", to_json(h.attracting)},
          {"repelling", to_json(h.repelling)},
          {"C_A", to_json(h.C_A)},
          {"E_A", to_json(h.E_A)},
          {"residual", h.residual}};
}

Json to_json(const IsometryReport& r) {
  Json out = {{"verdict", std::string(to_string(r.verdict))}};
  if (r.hyperbolic) {
    out["r"] = r.hyperbolic->r;
    out["theta"] = r.hyperbolic->theta;
    out["normal_form"] = to_json(*r.hyperbolic);
  }
  Json eig = Json::array();
  Json values = Json::array();
  for (const EigenPair& e : r.eigen) {
    eig.push_back(to_json(e));
    values.push_back(to_json(e.cls.rep));
  }
  out["eigenvalues"] = std::move(values);
  out["eigen"] = std::move(eig);
  return out;
}

Json to_json(const CartanValue& c) { return {{"angle", c.angle}, {"H", to_json(c.triple)}}; }

Json to_json(const ReverserWitness& w) {
  return {{"C", to_json(w.C)},
          {"square_sign", w.square_sign},
          {"residual_conj", w.residual_conj},
          {"residual_group", w.residual_group},
          {"residual_square", w.residual_square}};
}

Json to_json(const SdrVerdict& v) {
  Json out = {{"outcome", std::string(to_string(v.outcome))}, {"certificate", v.certificate}};
  if (v.witness) out["witness"] = to_json(*v.witness);
  Json q = Json::object();
  for (const auto& [k, val] : v.quantities) q[k] = val;
  out["quantities"] = std::move(q);
  if (v.closed_form_agrees) out["closed_form_agrees"] = *v.closed_form_agrees;
  if (v.t) out["t"] = to_json(*v.t);
  return out;
}

Json to_json(const ReverserSpace& s) {
  Json basis = Json::array();
  for (const QMatrix& b : s.basis) basis.push_back(to_json(b));
  return {{"ambient_dim", s.ambient_dim}, {"dim", s.dim}, {"basis", std::move(basis)}};
}

Json to_json(const LieDims& d) {
  return {{"total", d.total}, {"plus_one", d.plus_one}, {"minus_one", d.minus_one}};
}

Json to_json(const AuditRow& row) {
  return {{"algebra", row.algebra},       {"n", row.n},
          {"element", row.element},       {"computed", to_json(row.computed)},
          {"formula", to_json(row.formula)}, {"match", row.match()}};
}

Json to_json(const ExperimentReport& r) {
  Json hist = Json::object();
  for (const auto& [dim, count] : r.dim_histogram) hist[std::to_string(dim)] = count;
  Json out = {{"group", std::string(to_string(r.group))},
              {"trials", r.trials},
              {"seed", r.seed},
              {"sdr_yes", r.sdr_yes},
              {"certified_no", r.certified_no},
              {"inconclusive", r.inconclusive},
              {"fraction_sdr", r.fraction_sdr},
              {"fraction_dim_zero", r.fraction_dim_zero},
              {"dim_histogram", std::move(hist)},
              {"residual_stats",
               {{"max", r.residuals.max}, {"mean", r.residuals.mean}, {"count", r.residuals.count}}},
              {"note", r.note}};
  if (!r.classes.empty()) out["classes"] = r.classes;
  return out;
}

Quaternion quaternion_from_json(const Json& j) {
  if (j.is_number()) return Quaternion(j.get<double>());
  if (!j.is_array() || j.size() != 4) malformed("quaternion must be [w, x, y, z]");
  return {number(j[0], "w"), number(j[1], "x"), number(j[2], "y"), number(j[3], "z")};
}

Complex complex_from_json(const Json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2) malformed("complex number must be [re, im]");
  return {number(j[0], "re"), number(j[1], "im")};
}

QMatrix matrix_from_json(const Json& j) {
  if (j.is_object()) {
    if (!j.contains("rows") || !j.contains("cols") || !j.contains("entries")) {
      malformed("matrix object needs rows, cols, entries");
    }
    const auto& e = j.at("entries");
    if (!j.at("rows").is_number_unsigned() || !j.at("cols").is_number_unsigned() || !e.is_array()) {
      malformed("matrix shape");
    }
    const auto rows = j.at("rows").get<std::size_t>();
    const auto cols = j.at("cols").get<std::size_t>();
    if (e.size() != rows * cols) malformed("entry count does not match shape");
    std::vector<Quaternion> entries;
    for (const Json& q : e) entries.push_back(quaternion_from_json(q));
    return QMatrix(rows, cols, std::move(entries));
  }
  // A bare quaternion [w,x,y,z] of numbers is read as a 1x1 matrix.
  if (j.is_array() && j.size() == 4 && j[0].is_number()) return QMatrix{{quaternion_from_json(j)}};
  if (!j.is_array() || j.empty() || !j[0].is_array()) malformed("matrix must be an object or array of rows");
  const std::size_t rows = j.size();
  const std::size_t cols = j[0].size();
  std::vector<Quaternion> entries;
  for (const Json& row : j) {
    if (!row.is_array() || row.size() != cols) malformed("ragged matrix rows");
    for (const Json& q : row) entries.push_back(quaternion_from_json(q));
  }
  return QMatrix(rows, cols, std::move(entries));
}

BoundaryPoint point_from_json(const HermitianSpace& space, const Json& j, double tol) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf" || s == "infinity") return infinity_point(space);
    if (s == "o" || s == "origin") return origin_point(space);
    malformed("unknown point name '" + s + "'");
  }
  QMatrix v;
  if (j.is_object()) {
    v = matrix_from_json(j);
  } else if (j.is_array()) {
    std::vector<Quaternion> coords;
    for (const Json& q : j) coords.push_back(quaternion_from_json(q));
    v = QMatrix::column(coords);
  } else {
    malformed("point must be a name or a lift column");
  }
  if (v.cols() != 1 || v.rows() != space.dim()) {
    throw Error(ErrorKind::DimensionMismatch, "lift has the wrong length");
  }
  return boundary_point(space, v, tol);
}

Eigen::MatrixXd real_matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty() || !j[0].is_array()) malformed("real matrix must be an array of rows");
  Eigen::MatrixXd m(j.size(), j[0].size());
  for (std::size_t r = 0; r < j.size(); ++r) {
    if (!j[r].is_array() || j[r].size() != j[0].size()) malformed("ragged matrix rows");
    for (std::size_t c = 0; c < j[r].size(); ++c) m(r, c) = number(j[r][c], "entry");
  }
  return m;
}

Json real_matrix_to_json(const Eigen::MatrixXd& m) {
  Json out = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    out.push_back(std::move(row));
  }
  return out;
}

}  // namespace qhr
