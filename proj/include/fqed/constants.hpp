#pragma once

#include <numbers>

namespace fqed {

inline constexpr double kFineStructure = 7.2973525693e-3;
inline constexpr double kElectronMassMeV = 0.51099895;
inline constexpr double kEulerGamma = std::numbers::egamma;

} // namespace fqed
