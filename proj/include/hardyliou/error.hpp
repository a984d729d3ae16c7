#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hardyliou {

enum class ErrorKind {
  Domain,                 // point on or outside the closed unit disk
  InvalidSpec,            // inconsistent kernel / operator specification
  InvalidIndex,
  SingularSymbol,         // series with vanishing constant term where one is required
  Aliasing,               // boundary grid too coarse for the requested order
  LogDomain,              // nonpositive modulus handed to the outer construction
  CompositionOutOfDisk,   // |phi(w)| >= 1
  DiskExit,               // ODE trajectory left the admissible disk
  InsufficientData,
  IllConditioned,
  NonConvergence,
  SymbolHasZeros,
  Ingestion,
  Config,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace hardyliou
