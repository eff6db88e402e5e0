#pragma once

// JSON encodings shared by the CLI and tests.
//   quaternion  [w, x, y, z]
//   complex     [re, im]
//   matrix      {"rows": r, "cols": c, "entries": [q, ...]} (row-major),
//               or a nested array of rows [[q, ...], ...] on input.

#include <json.hpp>

#include "qhr/cartan.hpp"
#include "qhr/experiments.hpp"
#include "qhr/reversers.hpp"
#include "qhr/spectral.hpp"

namespace qhr {

using Json = nlohmann::json;

Json to_json(const Quaternion& q);
Json to_json(Complex c);
Json to_json(const QMatrix& m);
Json to_json(const BoundaryPoint& p);
Json to_json(const EigenPair& e);
Json to_json(const HyperbolicData& h);
Json to_json(const IsometryReport& r);
Json to_json(const CartanValue& c);
Json to_json(const ReverserWitness& w);
Json to_json(const SdrVerdict& v);
Json to_json(const ReverserSpace& s);
Json to_json(const LieDims& d);
Json to_json(const AuditRow& row);
Json to_json(const ExperimentReport& r);

// Parsers throw MalformedInput.
Quaternion quaternion_from_json(const Json& j);
Complex complex_from_json(const Json& j);
QMatrix matrix_from_json(const Json& j);
/// A boundary point: "inf", "infinity", "o", or a lift column.
BoundaryPoint point_from_json(const HermitianSpace& space, const Json& j, double tol);
Eigen::MatrixXd real_matrix_from_json(const Json& j);
Json real_matrix_to_json(const Eigen::MatrixXd& m);

}  // namespace qhr
