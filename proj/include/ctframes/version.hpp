#ifndef CTFRAMES_VERSION_HPP
#define CTFRAMES_VERSION_HPP

namespace ctf {

inline constexpr const char* kVersion = "1.0.0";

}

#endif
