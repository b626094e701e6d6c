#pragma once

#include <cstdint>

namespace frtrust {

using NodeId = std::uint32_t;

} // namespace frtrust
