#pragma once

#include "bargmann.hpp"
#include "coherent.hpp"
#include "detail/parallel.hpp"
#include "disk.hpp"
#include "errors.hpp"
#include "hypergeom.hpp"
#include "identities.hpp"
#include "orthopoly.hpp"
#include "oscillator.hpp"
#include "quadrature.hpp"
#include "types.hpp"
#include "verify.hpp"

#ifndef RBT_VERSION
#define RBT_VERSION "0.1.0"
#endif

namespace rbt {

inline const char* version() { return RBT_VERSION; }

}  // namespace rbt
