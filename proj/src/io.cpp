#include "hardyliou/io.hpp"

#include <openssl/evp.h>

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "hardyliou/error.hpp"

namespace hardyliou::io {

namespace {

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

bool parse_double(std::string_view text, double& out) {
  while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) text.remove_prefix(1);
  while (!text.empty() && (text.back() == ' ' || text.back() == '\t' || text.back() == '\r'))
    text.remove_suffix(1);
  if (text.empty()) return false;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  return ec == std::errc() && ptr == text.data() + text.size() && std::isfinite(out);
}

json complex_list(std::span<const Complex> values) {
  json out = json::array();
  for (Complex z : values) out.push_back(to_json(z));
  return out;
}

json matrix_json(const Eigen::MatrixXcd& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

json to_json(Complex z) { return json::array({z.real(), z.imag()}); }

Complex complex_from_json(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  throw Error(ErrorKind::Config, "expected a number or [re, im], got " + j.dump());
}

json to_json(const TaylorPolynomial& g) { return {{"coeffs", complex_list(g.coeffs())}}; }

TaylorPolynomial polynomial_from_json(const json& j) {
  const json& list = j.is_object() && j.contains("coeffs") ? j.at("coeffs") : j;
  if (!list.is_array() || list.empty())
    throw Error(ErrorKind::Config, "expected a nonempty coefficient list, got " + j.dump());
  std::vector<Complex> coeffs;
  for (const json& c : list) coeffs.push_back(complex_from_json(c));
  return TaylorPolynomial(std::move(coeffs));
}

json to_json(const BoundaryGrid& b) { return {{"values", complex_list(b.values())}}; }

json to_json(const OperatorMatrix& A) {
  json out;
  out["order"] = A.order();
  out["kind"] = to_string(A.kind());
  out["adjoint"] = A.is_adjoint();
  out["entries"] = matrix_json(A.entries());
  if (!A.warnings().empty()) out["warnings"] = A.warnings();
  return out;
}

json eigen_report(const std::vector<EigenPair>& pairs) {
  json out = json::array();
  for (const EigenPair& p : pairs) out.push_back({{"value", to_json(p.value)}, {"residual", p.residual}});
  return out;
}

json to_json(const DmdModel& model) {
  json out;
  out["order"] = model.order;
  out["ridge"] = model.ridge;
  out["dropped_modes"] = model.dropped_modes;
  out["gram"] = matrix_json(model.gram);
  out["operator"] = matrix_json(model.op);
  json eig = json::array(), modes = json::array(), residuals = json::array();
  for (const DmdMode& m : model.modes) {
    eig.push_back(to_json(m.eigenvalue));
    modes.push_back(complex_list(m.mode.coeffs()));
    residuals.push_back(m.residual);
  }
  out["eigenvalues"] = std::move(eig);
  out["mode_residuals"] = std::move(residuals);
  out["modes"] = std::move(modes);
  out["trajectory_digests"] = model.digests;
  return out;
}

json to_json(const BoundednessBound& bound) {
  return {{"B_prime", bound.b_prime}, {"diverges", bound.diverges}, {"probe", to_json(bound.probe)}};
}

json to_json(const RadialProfile& profile) {
  return {{"radii", profile.radii}, {"values", profile.values}};
}

std::string sha256_hex(const std::string& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &length, EVP_sha256(), nullptr) != 1)
    throw Error(ErrorKind::Ingestion, "SHA-256 digest failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < length; ++i) {
    out.push_back(hex[digest[i] >> 4]);
    out.push_back(hex[digest[i] & 15]);
  }
  return out;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Ingestion, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::filesystem::path& path, const std::string& contents) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::Ingestion, "cannot write " + path.string());
  out << contents;
}

IngestedTrajectory read_trajectory_csv(const std::filesystem::path& path) {
  const std::string bytes = read_file(path);
  const std::string file = path.string();
  std::vector<double> times;
  std::vector<Complex> points;
  std::istringstream in(bytes);
  std::string line;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    ++row;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::vector<std::string_view> fields;
    std::string_view rest(line);
    for (;;) {
      const std::size_t comma = rest.find(',');
      fields.push_back(rest.substr(0, comma));
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    double t = 0, re = 0, im = 0;
    const bool ok = fields.size() == 3 && parse_double(fields[0], t) && parse_double(fields[1], re) &&
                    parse_double(fields[2], im);
    if (!ok) {
      if (row == 1 && times.empty()) continue;  // header
      throw Error(ErrorKind::Ingestion,
                  file + " row " + std::to_string(row) + ": expected t,re,im got '" + line + "'");
    }
    if (!times.empty() && !(t > times.back()))
      throw Error(ErrorKind::Ingestion, file + " rows " + std::to_string(row - 1) + "-" +
                                            std::to_string(row) + ": time not increasing (" +
                                            format_double(times.back()) + " then " +
                                            format_double(t) + ")");
    if (!(std::abs(Complex(re, im)) < 1.0))
      throw Error(ErrorKind::Ingestion, file + " row " + std::to_string(row) +
                                            ": point outside the open unit disk (|z| = " +
                                            format_double(std::abs(Complex(re, im))) + ")");
    times.push_back(t);
    points.push_back({re, im});
  }
  if (times.empty()) throw Error(ErrorKind::Ingestion, file + ": no samples");
  return {Trajectory(std::move(times), std::move(points), 0.0), sha256_hex(bytes), path};
}

std::string trajectory_csv(const Trajectory& trajectory) {
  std::string out = "t,re,im\n";
  for (std::size_t k = 0; k < trajectory.size(); ++k) {
    out += format_double(trajectory.times()[k]) + "," + format_double(trajectory.points()[k].real()) +
           "," + format_double(trajectory.points()[k].imag()) + "\n";
  }
  return out;
}

void write_trajectory_csv(const std::filesystem::path& path, const Trajectory& trajectory) {
  write_file(path, trajectory_csv(trajectory));
}

std::string profile_csv(const RadialProfile& profile) {
  std::string out = "radius,value\n";
  for (std::size_t i = 0; i < profile.radii.size(); ++i)
    out += format_double(profile.radii[i]) + "," + format_double(profile.values[i]) + "\n";
  return out;
}

}  // namespace hardyliou::io
