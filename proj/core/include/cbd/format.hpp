#pragma once

// cbd-system/1 documents:
//
//   {"format": "cbd-system/1", "name": "...",
//    "contexts": [{"id": "c1", "properties": ["q1", "q2"],
//                  "table": {"+1,-1": "1/2", "-1,+1": "0.5"}}]}
//
// Tuple keys list outcomes in label-sorted property order whatever order the
// "properties" array uses. Omitted tuples have probability 0.

#include <string>
#include <string_view>

#include "cbd/system.hpp"

namespace cbd {

inline constexpr std::string_view kSystemFormat = "cbd-system/1";

System parse_system(std::string_view text);
std::string serialize_system(const System& system);

System load_system(const std::string& path);
std::string read_file(const std::string& path);

}  // namespace cbd
