#include "mdtn/error.hpp"

namespace mdtn {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::AmbiguousBranch: return "numerics.AmbiguousBranch";
    case ErrorCode::ZeroConstantTerm: return "numerics.ZeroConstantTerm";
    case ErrorCode::OrderUnderflow: return "numerics.OrderUnderflow";
    case ErrorCode::Singular: return "numerics.Singular";
    case ErrorCode::InvalidInput: return "crosssys.InvalidInput";
    case ErrorCode::FocalDegeneracy: return "geometry.FocalDegeneracy";
    case ErrorCode::RealFrequency: return "spectral.RealFrequency";
    case ErrorCode::ZeroFrequencyCovector: return "spectral.ZeroFrequencyCovector";
    case ErrorCode::DegenerateRho: return "crosssys.DegenerateRho";
    case ErrorCode::OutsideRetainedRegion: return "eikonal.OutsideRetainedRegion";
    case ErrorCode::OrderBudgetExceeded: return "transport.OrderBudgetExceeded";
    case ErrorCode::InteriorResonance: return "mie.InteriorResonance";
    case ErrorCode::ContourThroughZero: return "transmission.ContourThroughZero";
    case ErrorCode::CoincidentMedia: return "transmission.CoincidentMedia";
    case ErrorCode::ConfigError: return "cli.ConfigError";
  }
  return "unknown";
}

}  // namespace mdtn
