#pragma once

namespace rotomag {

// Serial runs the plain reference loop; Parallel distributes independent
// grid points across OpenMP threads.  Both produce bit-identical output.
enum class Execution { Serial, Parallel };

}  // namespace rotomag
