#include "hardyliou/error.hpp"

namespace hardyliou {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Domain: return "domain";
    case ErrorKind::InvalidSpec: return "invalid-spec";
    case ErrorKind::InvalidIndex: return "invalid-index";
    case ErrorKind::SingularSymbol: return "singular-symbol";
    case ErrorKind::Aliasing: return "aliasing";
    case ErrorKind::LogDomain: return "log-domain";
    case ErrorKind::CompositionOutOfDisk: return "composition-out-of-disk";
    case ErrorKind::DiskExit: return "disk-exit";
    case ErrorKind::InsufficientData: return "insufficient-data";
    case ErrorKind::IllConditioned: return "ill-conditioned";
    case ErrorKind::NonConvergence: return "non-convergence";
    case ErrorKind::SymbolHasZeros: return "symbol-has-zeros";
    case ErrorKind::Ingestion: return "ingestion";
    case ErrorKind::Config: return "config";
  }
  return "unknown";
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

}  // namespace hardyliou
