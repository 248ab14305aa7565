#include "qbm/errors.hpp"

namespace qbm {

std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::DivergentKernel: return "DivergentKernel";
        case ErrorKind::BranchCut: return "BranchCut";
        case ErrorKind::PoleOnAxis: return "PoleOnAxis";
        case ErrorKind::InvalidGrid: return "InvalidGrid";
        case ErrorKind::Instability: return "Instability";
        case ErrorKind::NoConvergence: return "NoConvergence";
        case ErrorKind::NonNormalizable: return "NonNormalizable";
        case ErrorKind::SingularBlock: return "SingularBlock";
        case ErrorKind::NonTraceable: return "NonTraceable";
        case ErrorKind::InvertedPotential: return "InvertedPotential";
        case ErrorKind::ZeroTemperature: return "ZeroTemperature";
        case ErrorKind::TruncationError: return "TruncationError";
        case ErrorKind::BranchAmbiguity: return "BranchAmbiguity";
        case ErrorKind::UnstableReducedPotential: return "UnstableReducedPotential";
        case ErrorKind::ConfigError: return "ConfigError";
    }
    return "Unknown";
}

}  // namespace qbm
