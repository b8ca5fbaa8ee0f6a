#ifndef KGT_VERSION_HPP
#define KGT_VERSION_HPP

namespace kgt {
inline constexpr const char* version = "0.1.0";
}

#endif
