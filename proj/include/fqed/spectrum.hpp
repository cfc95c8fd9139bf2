#pragma once

#include "fqed/loops.hpp"

#include <filesystem>
#include <istream>

namespace fqed {

/// Text spectrum document:
///
///   # comment
///   [levels]
///   2p  -0.125
///   1s  -0.5
///   [current 2p 1s]
///   # k  J0  Jx  Jy  Jz
///   0.0  0   0.01  0  0
///   1.0  0   0.01  0  0
///   [cutoff]
///   0.9
///
/// Currents are interpolated linearly in k. Without [cutoff] the photon
/// cutoff is the smallest final k over the current tables.
/// Throws DomainError with the offending line number.
SpectrumInput parse_spectrum(std::istream& in);
SpectrumInput load_spectrum(const std::filesystem::path& path);

} // namespace fqed
