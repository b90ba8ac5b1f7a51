#pragma once

namespace qsig {

inline constexpr const char* kCodeVersion = "0.1.0";

// Pinned pseudorandom generator identity. The bit stream is std::mt19937_64
// (whose output is fixed by the standard); uniform/normal/gamma transforms are
// hand-rolled in sampling.hpp rather than taken from <random> distributions,
// which are implementation-defined and would silently break reproducibility
// across standard libraries. The tag is echoed into every report so archived
// numbers can be traced to the exact sampling scheme.
inline constexpr const char* kRngId = "mt19937_64/bm1";

// Report schema tags (see experiments.hpp and the README for column layouts).
inline constexpr const char* kReportSchema = "qsig report v1";
inline constexpr const char* kTrajectorySchema = "qsig trajectory v1";

}  // namespace qsig
