#include "znr/zero_noise.hpp"

namespace znr {

std::string_view to_string(GammaMode mode)
{
    switch (mode) {
    case GammaMode::plain: return "plain";
    case GammaMode::extended: return "extended";
    case GammaMode::personalized: return "personalized";
    case GammaMode::uniform: return "uniform";
    }
    return "unknown";
}

} // namespace znr
