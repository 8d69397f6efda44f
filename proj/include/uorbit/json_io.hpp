#pragma once

// JSON file formats shared by the CLI.
//
// State / operator files:
//   {"dim": d, "matrix": [[[re, im], ...], ...]}    d x d complex entries
//   {"dim": d, "spectrum": [p_0, ..., p_{d-1}]}     diagonal in the computational basis
// Exactly one of "matrix" and "spectrum" must be present.
//
// Output is written with object keys in sorted order and every real at 17
// significant digits, so identical inputs give byte-identical files.

#include <filesystem>
#include <string>

#include <json.hpp>

#include "uorbit/dynamics.hpp"
#include "uorbit/majorization.hpp"
#include "uorbit/orbit_extrema.hpp"
#include "uorbit/verify.hpp"

namespace uorbit::io {

using Json = nlohmann::json;

Json read_json_file(const std::filesystem::path& path);

/// Raw complex matrix from the state schema, before any physical validation.
ComplexMatrixd parse_complex_matrix(const Json& j);

DensityMatrix parse_state(const Json& j);
HermitianMatrixd parse_hermitian(const Json& j);
/// Real matrix: entries may be plain numbers or [re, im] pairs with im == 0.
Eigen::MatrixXd parse_real_matrix(const Json& j);

Json matrix_to_json(const ComplexMatrixd& m);
Json state_to_json(const DensityMatrix& rho);
Json unitary_to_json(const UnitaryMatrixd& u);
UnitaryMatrixd unitary_from_json(const Json& j);

Json to_json(const CheckReport& r);
CheckReport report_from_json(const Json& j);
Json to_json(const ScanResult& r);
Json to_json(const BirkhoffDecomposition& dec, double residual);

/// Pretty-printed JSON, sorted keys, reals formatted with %.17g; non-finite reals become null.
std::string dump(const Json& j);

/// CSV with header "t,g" and 17 significant digits.
std::string curve_to_csv(const OrbitCurve& curve);

std::string format_real(double x);

}  // namespace uorbit::io
