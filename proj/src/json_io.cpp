#include "uorbit/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

namespace uorbit::io {

namespace {

int parse_dim(const Json& j) {
  if (!j.is_object()) throw ParseError("expected a JSON object");
  if (!j.contains("dim") || !j["dim"].is_number_integer()) throw ParseError("missing integer field \"dim\"");
  const auto d = j["dim"].get<long long>();
  if (d < 1 || d > 4096) throw ParseError("\"dim\" must be a positive integer");
  return static_cast<int>(d);
}

std::complex<double> parse_entry(const Json& e) {
  if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number()) {
    return {e[0].get<double>(), e[1].get<double>()};
  }
  throw ParseError("matrix entries must be [re, im] pairs of numbers");
}

template <typename Entry, typename Parse>
Eigen::Matrix<Entry, Eigen::Dynamic, Eigen::Dynamic> parse_rows(const Json& rows, int d, Parse&& parse) {
  if (!rows.is_array() || static_cast<int>(rows.size()) != d) {
    throw ParseError("\"matrix\" must have exactly dim = " + std::to_string(d) + " rows");
  }
  Eigen::Matrix<Entry, Eigen::Dynamic, Eigen::Dynamic> m(d, d);
  for (int i = 0; i < d; ++i) {
    const Json& row = rows[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<int>(row.size()) != d) {
      throw ParseError("row " + std::to_string(i) + " must have exactly dim = " + std::to_string(d) + " entries");
    }
    for (int k = 0; k < d; ++k) m(i, k) = parse(row[static_cast<std::size_t>(k)]);
  }
  return m;
}

void format_into(const Json& j, std::string& out, int indent) {
  const std::string pad(static_cast<std::size_t>(indent + 2), ' ');
  const std::string close_pad(static_cast<std::size_t>(indent), ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        out += pad + Json(it.key()).dump() + ": ";
        format_into(it.value(), out, indent + 2);
      }
      out += "\n" + close_pad + "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      // Arrays of scalars stay on one line.
      const bool flat = std::all_of(j.begin(), j.end(), [](const Json& e) { return e.is_primitive(); });
      if (flat) {
        out += "[";
        for (std::size_t i = 0; i < j.size(); ++i) {
          if (i) out += ", ";
          format_into(j[i], out, indent);
        }
        out += "]";
        return;
      }
      out += "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += ",\n";
        out += pad;
        format_into(j[i], out, indent + 2);
      }
      out += "\n" + close_pad + "]";
      return;
    }
    case Json::value_t::number_float:
      out += format_real(j.get<double>());
      return;
    default:
      out += j.dump();
  }
}

}  // namespace

std::string format_real(double x) {
  if (!std::isfinite(x)) return "null";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path.string() + "'");
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw ParseError("'" + path.string() + "': " + e.what());
  }
}

ComplexMatrixd parse_complex_matrix(const Json& j) {
  const int d = parse_dim(j);
  const bool has_matrix = j.contains("matrix");
  const bool has_spectrum = j.contains("spectrum");
  if (has_matrix == has_spectrum) throw ParseError("exactly one of \"matrix\" and \"spectrum\" must be present");
  if (has_matrix) return parse_rows<std::complex<double>>(j["matrix"], d, parse_entry);

  const Json& s = j["spectrum"];
  if (!s.is_array() || static_cast<int>(s.size()) != d) {
    throw ParseError("\"spectrum\" must be an array of dim = " + std::to_string(d) + " numbers");
  }
  ComplexMatrixd m = ComplexMatrixd::Zero(d, d);
  for (int i = 0; i < d; ++i) {
    if (!s[static_cast<std::size_t>(i)].is_number()) throw ParseError("\"spectrum\" entries must be numbers");
    m(i, i) = s[static_cast<std::size_t>(i)].get<double>();
  }
  return m;
}

DensityMatrix parse_state(const Json& j) {
  try {
    return DensityMatrix::from_raw(parse_complex_matrix(j));
  } catch (const ValidationError& e) {
    throw ParseError(std::string("invalid density matrix: ") + e.what());
  } catch (const DimensionError& e) {
    throw ParseError(std::string("invalid density matrix: ") + e.what());
  }
}

HermitianMatrixd parse_hermitian(const Json& j) {
  try {
    return HermitianMatrixd(parse_complex_matrix(j));
  } catch (const ValidationError& e) {
    throw ParseError(std::string("invalid Hermitian matrix: ") + e.what());
  }
}

Eigen::MatrixXd parse_real_matrix(const Json& j) {
  const int d = parse_dim(j);
  if (!j.contains("matrix")) throw ParseError("missing field \"matrix\"");
  return parse_rows<double>(j["matrix"], d, [](const Json& e) {
    if (e.is_number()) return e.get<double>();
    const std::complex<double> z = parse_entry(e);
    if (z.imag() != 0.0) throw ParseError("real matrix entries must have zero imaginary part");
    return z.real();
  });
}

Json matrix_to_json(const ComplexMatrixd& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(Json::array({m(i, k).real(), m(i, k).imag()}));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json state_to_json(const DensityMatrix& rho) {
  return Json{{"dim", rho.dim()}, {"matrix", matrix_to_json(rho.matrix())}};
}

Json unitary_to_json(const UnitaryMatrixd& u) { return matrix_to_json(u.matrix()); }

UnitaryMatrixd unitary_from_json(const Json& j) {
  if (!j.is_array()) throw ParseError("unitary must be an array of rows");
  const int d = static_cast<int>(j.size());
  try {
    return UnitaryMatrixd(parse_rows<std::complex<double>>(j, d, parse_entry));
  } catch (const ValidationError& e) {
    throw ParseError(e.what());
  }
}

Json to_json(const CheckReport& r) {
  Json j{{"check", r.name},           {"samples", r.samples}, {"failures", r.failures},
         {"worst_violation", r.worst_violation}, {"tolerance", r.tolerance}, {"seed", r.seed},
         {"passed", r.passed()}};
  if (!r.extras.empty()) j["extras"] = r.extras;
  return j;
}

CheckReport report_from_json(const Json& j) {
  CheckReport r;
  try {
    r.name = j.at("check").get<std::string>();
    r.samples = j.at("samples").get<int>();
    r.failures = j.at("failures").get<int>();
    r.worst_violation = j.at("worst_violation").is_null() ? std::numeric_limits<double>::infinity()
                                                          : j.at("worst_violation").get<double>();
    r.tolerance = j.at("tolerance").get<double>();
    r.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("extras")) r.extras = j["extras"].get<std::map<std::string, double>>();
  } catch (const Json::exception& e) {
    throw ParseError(std::string("malformed check report: ") + e.what());
  }
  return r;
}

Json to_json(const ScanResult& r) {
  return Json{{"t_min", r.t_min}, {"g_min", r.g_min}, {"t_max", r.t_max}, {"g_max", r.g_max},
              {"refined", r.refined}, {"grid", r.grid}, {"t_end", r.t_end}, {"heuristic", true}};
}

Json to_json(const BirkhoffDecomposition& dec, double residual) {
  Json terms = Json::array();
  for (const auto& t : dec.terms) terms.push_back(Json{{"weight", t.weight}, {"perm", t.permutation.mapping()}});
  return Json{{"terms", std::move(terms)}, {"residual", residual}, {"weight_sum", dec.weight_sum()}};
}

std::string dump(const Json& j) {
  std::string out;
  format_into(j, out, 0);
  out += "\n";
  return out;
}

std::string curve_to_csv(const OrbitCurve& curve) {
  std::string out = "t,g\n";
  for (std::size_t i = 0; i < curve.times.size(); ++i) {
    out += format_real(curve.times[i]) + "," + format_real(curve.values[i]) + "\n";
  }
  return out;
}

}  // namespace uorbit::io
