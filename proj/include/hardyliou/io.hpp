#pragma once

// JSON and CSV serialization. Complex numbers are written as [re, im].

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "hardyliou/boundary_analysis.hpp"
#include "hardyliou/dmd.hpp"
#include "hardyliou/liouville.hpp"
#include "hardyliou/occupation.hpp"
#include "hardyliou/spectral.hpp"

namespace hardyliou::io {

using json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

json to_json(Complex z);
/// Accepts a bare number or a [re, im] pair.
Complex complex_from_json(const json& j);

json to_json(const TaylorPolynomial& g);                  // {"coeffs": [...]}
TaylorPolynomial polynomial_from_json(const json& j);     // {"coeffs": [...]} or a bare list
json to_json(const BoundaryGrid& b);                      // {"values": [...]}
json to_json(const OperatorMatrix& A);                    // entries row-major
json eigen_report(const std::vector<EigenPair>& pairs);   // [{value, residual}]
json to_json(const DmdModel& model);
json to_json(const BoundednessBound& bound);              // {B_prime, diverges}
json to_json(const RadialProfile& profile);

std::string sha256_hex(const std::string& bytes);

struct IngestedTrajectory {
  Trajectory trajectory;
  std::string digest;
  std::filesystem::path source;
};

/// Reads `t,re,im` rows (an optional header line is skipped). Malformed rows,
/// non-increasing times and points with |z| >= 1 throw Ingestion naming the file
/// and the 1-based row.
IngestedTrajectory read_trajectory_csv(const std::filesystem::path& path);

void write_trajectory_csv(const std::filesystem::path& path, const Trajectory& trajectory);
std::string trajectory_csv(const Trajectory& trajectory);
std::string profile_csv(const RadialProfile& profile);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& contents);

}  // namespace hardyliou::io
