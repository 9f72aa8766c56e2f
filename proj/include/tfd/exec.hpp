#pragma once

namespace tfd {

// Every data-parallel kernel takes an execution policy. The serial path runs the
// same loop body on one thread and is kept as the reference the OpenMP path is
// tested against; results are identical because each iteration writes a
// disjoint output region.
enum class Exec { serial, parallel };

}  // namespace tfd
