#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "cli/config.hpp"

namespace hardyliou::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitCertificateFailure = 1;
inline constexpr int kExitInvalidConfig = 2;

const std::vector<std::string>& command_names();

/// Collects results and certificates and renders the JSON report.
class Report {
 public:
  Report(std::string command, const ExperimentConfig& cfg);

  io::json& results() { return results_; }
  /// Passes when value <= tolerance (NaN fails).
  void certify(const std::string& name, double value, double tolerance, const std::string& formula);
  void require(const std::string& name, bool ok, const std::string& formula);
  bool pass() const;
  io::json document() const;
  void print(std::ostream& out) const;

 private:
  std::string command_;
  io::json inputs_;
  io::json results_ = io::json::object();
  io::json certificates_ = io::json::array();
};

/// Runs a command and writes `<command>.json` (plus CSV tables) into out_dir.
/// Returns the exit code; Config errors propagate as exceptions.
int run_command(const std::string& command, const ExperimentConfig& cfg,
                const std::filesystem::path& out_dir, std::ostream& log);

/// Maps an error raised while running a command to an exit code.
int exit_code_for(const std::exception& e);

}  // namespace hardyliou::cli
