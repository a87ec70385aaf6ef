#pragma once

namespace entb {

/// Selects the OpenMP kernel or its serial reference. Both produce identical results.
enum class Execution { Serial, Parallel };

}  // namespace entb
