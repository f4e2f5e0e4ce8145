#pragma once

#include <string_view>

namespace alphamix {

/// Library version, "major.minor.patch".
std::string_view version() noexcept;

}  // namespace alphamix
