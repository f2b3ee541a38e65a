#pragma once

#include <optional>
#include <string_view>

namespace wangtori {

/// Contents of a file from data/ compiled into the library.
std::optional<std::string_view> embedded_dataset(std::string_view file);

}  // namespace wangtori
