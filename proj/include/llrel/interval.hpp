#ifndef LLREL_INTERVAL_HPP
#define LLREL_INTERVAL_HPP

#include <optional>
#include <string>

namespace llrel {

enum class CiMethod { lse_gpq, parametric_bootstrap, asymptotic };
enum class CiTarget { alpha, beta, reliability };

std::string to_string(CiMethod m);
std::string to_string(CiTarget t);

struct IntervalEstimate {
    double lower;
    double upper;
    double level;
    CiMethod method;
    CiTarget target;
    std::optional<double> t; // evaluation time for reliability targets
    bool clamped = false;    // endpoints were cut back to [0, 1]

    double length() const { return upper - lower; }
    bool contains(double v) const { return lower <= v && v <= upper; }
};

} // namespace llrel

#endif
