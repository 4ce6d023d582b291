#pragma once

namespace rfwave {

/// Artifact version embedded in every JSON report for provenance.
inline constexpr const char* kVersion = "0.1.0";

}  // namespace rfwave
