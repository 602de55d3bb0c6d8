#ifndef DQDTHERM_VERSION_HPP
#define DQDTHERM_VERSION_HPP

namespace dqdtherm {

inline constexpr const char* kVersion = "0.1.0";

}

#endif
