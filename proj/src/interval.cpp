#include "llrel/interval.hpp"

namespace llrel {

std::string to_string(CiMethod m) {
    switch (m) {
    case CiMethod::lse_gpq:
        return "lse-gpq";
    case CiMethod::parametric_bootstrap:
        return "pb";
    case CiMethod::asymptotic:
        return "ai";
    }
    return "?";
}

std::string to_string(CiTarget t) {
    switch (t) {
    case CiTarget::alpha:
        return "alpha";
    case CiTarget::beta:
        return "beta";
    case CiTarget::reliability:
        return "reliability";
    }
    return "?";
}

} // namespace llrel
