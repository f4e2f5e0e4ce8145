#include "alphamix/version.hpp"

namespace alphamix {

std::string_view version() noexcept { return ALPHAMIX_VERSION_STRING; }

}  // namespace alphamix
