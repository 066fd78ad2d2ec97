#pragma once

// Ordered statistics post-processing for BP: order the columns by how
// likely each bit is to be in error (posterior LLR ascending), Gaussian-
// eliminate to find an information set, and solve. OSD-0 takes the direct
// solution; combination-sweep mode additionally tries flipping each single
// and each pair among the sweep_depth least reliable non-pivot positions,
// keeping the candidate with the best soft score. The returned estimate
// always satisfies H e = s.

#include "gnd/bp.hpp"

namespace gnd {

enum class OsdMode { Osd0, CombinationSweep };

BinaryVector osd_postprocess(const BinaryMatrix& h, const BinaryVector& syndrome,
                             const std::vector<double>& reliability_llr,
                             OsdMode mode = OsdMode::CombinationSweep,
                             std::size_t sweep_depth = 10);

}  // namespace gnd
