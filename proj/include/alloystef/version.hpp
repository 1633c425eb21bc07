#pragma once

namespace alloystef {

inline constexpr const char* version = "0.1.0";

}  // namespace alloystef
