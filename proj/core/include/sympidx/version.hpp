#pragma once

#ifndef SYMPIDX_VERSION
#define SYMPIDX_VERSION "0.0.0"
#endif

namespace sympidx {
inline constexpr const char* version = SYMPIDX_VERSION;
}
