#ifndef LLREL_DATASETS_HPP
#define LLREL_DATASETS_HPP

#include "llrel/sample.hpp"

namespace llrel {

// Bundled real datasets (also shipped as CSV under data/).

// Failure times of 12 grinding machines.
const Sample& grinder_dataset();

// Times between failures of a secondary reactor pump, 23 observations.
const Sample& reactor_pump_dataset();

} // namespace llrel

#endif
