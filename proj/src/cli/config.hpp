#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "hardyliou/io.hpp"

namespace hardyliou::cli {

struct OdeSpec {
  Complex z0;
  double T = 1.0;
  double dt = 1e-3;
};

struct ExperimentConfig {
  int N = 64;
  std::optional<std::size_t> M;
  std::optional<TaylorPolynomial> f;
  std::optional<TaylorPolynomial> phi;
  std::optional<OdeSpec> ode;
  std::vector<std::filesystem::path> trajectories;
  std::optional<std::filesystem::path> output;
  std::uint64_t seed = 0;
  io::json params = io::json::object();
  io::json raw;

  std::size_t boundary_samples(std::size_t fallback) const { return M.value_or(fallback); }
  const TaylorPolynomial& symbol() const;  // throws Config when f is missing
  const TaylorPolynomial& weight_map() const;
  const OdeSpec& flow() const;
};

/// Validates the parsed document. Relative trajectory paths resolve against
/// base_dir. All problems are collected into a single Config error.
ExperimentConfig parse_config(const io::json& doc, const std::filesystem::path& base_dir);
ExperimentConfig load_config(const std::filesystem::path& path);

/// Typed lookups in `params` with defaults; throw Config on a type mismatch.
double param_double(const ExperimentConfig& cfg, const char* key, double fallback);
int param_int(const ExperimentConfig& cfg, const char* key, int fallback);
std::string param_string(const ExperimentConfig& cfg, const char* key, const std::string& fallback);

}  // namespace hardyliou::cli
