#ifndef MODESIM_VERSION_HPP
#define MODESIM_VERSION_HPP

namespace modesim {
inline constexpr const char* kVersion = "0.1.0";
}

#endif
