#pragma once

namespace hierpart {

/// Selects the serial reference loop or the OpenMP kernel. Both produce
/// identical results; the serial path is kept for testing and benchmarking.
enum class Execution { Serial, Parallel };

}  // namespace hierpart
