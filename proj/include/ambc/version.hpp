#ifndef AMBC_VERSION_HPP
#define AMBC_VERSION_HPP

namespace ambc {
inline constexpr const char* kVersion = "0.1.0";
}

#endif
