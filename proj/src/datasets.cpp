#include "llrel/datasets.hpp"

namespace llrel {

const Sample& grinder_dataset() {
    static const Sample sample = Sample::complete(
        {12.5, 24.4, 58.2, 68.0, 69.1, 95.5, 96.6, 97.0, 114.2, 123.2, 125.6, 152.7});
    return sample;
}

const Sample& reactor_pump_dataset() {
    static const Sample sample = Sample::complete(
        {2.160, 0.746, 0.402, 0.954, 0.491, 6.560, 4.992, 0.347, 0.150, 0.358, 0.101, 1.359,
         3.465, 1.060, 0.614, 1.921, 4.082, 0.199, 0.605, 0.273, 0.070, 0.062, 5.320});
    return sample;
}

} // namespace llrel
