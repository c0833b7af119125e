#pragma once

namespace rablur {

inline constexpr const char* kToolVersion = "0.1.0";

}
