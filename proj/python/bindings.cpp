// Python bindings. Quaternionic matrices travel as float arrays of shape
// (rows, cols, 4); quaternions as 4-tuples (w, x, y, z). Structured results
// come back as dicts mirroring the CLI's JSON, with matrices as arrays.

#include <pybind11/eigen.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qhr/error.hpp"
#include "qhr/json_io.hpp"

namespace py = pybind11;
using namespace qhr;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

QMatrix to_qmatrix(const Array& a) {
  if (a.ndim() != 3 || a.shape(2) != 4) {
    throw py::value_error("expected an array of shape (rows, cols, 4)");
  }
  const auto rows = static_cast<std::size_t>(a.shape(0));
  const auto cols = static_cast<std::size_t>(a.shape(1));
  auto v = a.unchecked<3>();
  std::vector<Quaternion> entries;
  entries.reserve(rows * cols);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      entries.emplace_back(v(r, c, 0), v(r, c, 1), v(r, c, 2), v(r, c, 3));
    }
  }
  return QMatrix(rows, cols, std::move(entries));
}

Array to_array(const QMatrix& m) {
  Array out({m.rows(), m.cols(), std::size_t{4}});
  auto v = out.mutable_unchecked<3>();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      const Quaternion& q = m(r, c);
      v(r, c, 0) = q.w;
      v(r, c, 1) = q.x;
      v(r, c, 2) = q.y;
      v(r, c, 3) = q.z;
    }
  }
  return out;
}

Quaternion to_quaternion(const std::array<double, 4>& q) { return {q[0], q[1], q[2], q[3]}; }
py::tuple from_quaternion(const Quaternion& q) { return py::make_tuple(q.w, q.x, q.y, q.z); }

py::object to_python(const Json& j) {
  switch (j.type()) {
    case Json::value_t::null: return py::none();
    case Json::value_t::boolean: return py::bool_(j.get<bool>());
    case Json::value_t::number_integer: return py::int_(j.get<std::int64_t>());
    case Json::value_t::number_unsigned: return py::int_(j.get<std::uint64_t>());
    case Json::value_t::number_float: return py::float_(j.get<double>());
    case Json::value_t::string: return py::str(j.get<std::string>());
    case Json::value_t::array: {
      py::list out;
      for (const Json& v : j) out.append(to_python(v));
      return out;
    }
    case Json::value_t::object: {
      if (j.size() == 3 && j.contains("rows") && j.contains("cols") && j.contains("entries")) {
        return to_array(matrix_from_json(j));
      }
      py::dict out;
      for (const auto& [k, v] : j.items()) out[py::str(k)] = to_python(v);
      return out;
    }
    default: return py::none();
  }
}

HermitianSpace space_for(const std::string& form, const QMatrix& m) {
  return HermitianSpace::make(parse_form(form), static_cast<int>(m.rows()) - 1);
}

BoundaryPoint to_point(const HermitianSpace& space, const py::object& p) {
  if (py::isinstance<py::str>(p)) return point_from_json(space, Json(p.cast<std::string>()), 1e-9);
  const QMatrix v = to_qmatrix(p.cast<Array>());
  return boundary_point(space, v.cols() == 1 ? v : adj(v), 1e-9);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Quaternionic hyperbolic isometries and reversibility";

  // Messages read "Kind: detail", the kind being the error tag.
  py::register_exception<Error>(m, "QhrError", PyExc_ValueError);

  m.def("quat_mul", [](const std::array<double, 4>& p, const std::array<double, 4>& q) {
    return from_quaternion(to_quaternion(p) * to_quaternion(q));
  });
  m.def("solve_orthogonal_phase",
        [](std::complex<double> c2) { return solve_orthogonal_phase(c2); });
  m.def("solve_reflection_axis", [](const std::array<double, 4>& v, const std::array<double, 4>& w) {
    return from_quaternion(solve_reflection_axis(to_quaternion(v), to_quaternion(w)));
  });

  m.def("membership_residual", [](const Array& a, const std::string& form) {
    const QMatrix g = to_qmatrix(a);
    return membership_residual(space_for(form, g), g);
  }, py::arg("matrix"), py::arg("form") = "h1");
  m.def("eigenvalue_classes", [](const Array& a) {
    std::vector<std::complex<double>> out;
    for (const auto& c : eigenvalue_classes(to_qmatrix(a))) out.push_back(c.rep);
    return out;
  });
  m.def("classify", [](const Array& a, const std::string& form, double tol) {
    const QMatrix g = to_qmatrix(a);
    return to_python(to_json(classify(space_for(form, g), g, tol)));
  }, py::arg("matrix"), py::arg("form") = "h1", py::arg("tol") = kConstructionTol);
  m.def("normal_form", [](const Array& a, const std::string& form) {
    const QMatrix g = to_qmatrix(a);
    return to_python(to_json(hyperbolic_normal_form(space_for(form, g), g)));
  }, py::arg("matrix"), py::arg("form") = "h1");

  m.def("cartan_invariant", [](const py::object& p1, const py::object& p2, const py::object& p3,
                               int n, const std::string& form) {
    const HermitianSpace space = HermitianSpace::make(parse_form(form), n);
    return to_python(to_json(
        cartan_invariant(space, to_point(space, p1), to_point(space, p2), to_point(space, p3))));
  }, py::arg("p1"), py::arg("p2"), py::arg("p3"), py::arg("n") = 1, py::arg("form") = "h1");
  m.def("interchanging_skew_involution", [](const py::object& a_a, const py::object& r_a,
                                            const py::object& a_b, const py::object& r_b) {
    const HermitianSpace space = HermitianSpace::h1(1);
    return to_array(interchanging_skew_involution(space, to_point(space, a_a), to_point(space, r_a),
                                                  to_point(space, a_b), to_point(space, r_b)));
  });

  m.def("sdr_sp1", [](const std::array<double, 4>& p1, const std::array<double, 4>& p2) {
    return from_quaternion(sdr_sp1(to_quaternion(p1), to_quaternion(p2)));
  });
  m.def("sdr_so3", [](const Eigen::Matrix3d& r1, const Eigen::Matrix3d& r2) {
    const auto t = sdr_so3(r1, r2);
    return py::make_tuple(t.inv[0], t.inv[1], t.inv[2], t.residual);
  });
  m.def("sdr_so4", [](const Eigen::Matrix4d& r1, const Eigen::Matrix4d& r2) {
    const auto t = sdr_so4(r1, r2);
    return py::make_tuple(t.inv[0], t.inv[1], t.inv[2], t.residual);
  });
  m.def("so4_factor", [](const Eigen::Matrix4d& r) {
    const auto [p, q] = so4_factor(r);
    return py::make_tuple(from_quaternion(p), from_quaternion(q));
  });
  m.def("reverser_space", [](const std::vector<Array>& gs) {
    std::vector<QMatrix> ms;
    for (const Array& g : gs) ms.push_back(to_qmatrix(g));
    return to_python(to_json(reverser_space(ms)));
  });
  m.def("sdr_sp11", [](const Array& a, const Array& b, const std::string& form, double tol) {
    const QMatrix ga = to_qmatrix(a);
    return to_python(to_json(sdr_sp11(space_for(form, ga), ga, to_qmatrix(b), tol)));
  }, py::arg("a"), py::arg("b"), py::arg("form") = "h1", py::arg("tol") = kConstructionTol);
  m.def("sdr_vs_standard_predicate", [](const Array& b, double r, double theta) {
    return to_python(to_json(sdr_vs_standard_predicate(to_qmatrix(b), r, theta)));
  });

  m.def("genericity_experiment", [](const std::string& group, int trials, std::uint64_t seed) {
    ExperimentReport rep;
    {
      py::gil_scoped_release release;
      rep = genericity_experiment(parse_group(group), trials, seed);
    }
    return to_python(to_json(rep));
  }, py::arg("group"), py::arg("trials"), py::arg("seed") = 0);
  m.def("dimension_audit", [](int max_n) {
    py::list out;
    for (const AuditRow& row : dimension_audit(max_n)) out.append(to_python(to_json(row)));
    return out;
  }, py::arg("max_n") = 2);
}
