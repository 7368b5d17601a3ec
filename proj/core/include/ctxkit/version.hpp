#pragma once

namespace ctxkit {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace ctxkit
