#pragma once
#include <string>

#include "cclab/bodies.hpp"

namespace cclab {

// Body expressions used in config files; the ambient dimension N comes from the
// config, not the expression. Whitespace-insensitive. Grammar:
//   ball(l1|l2|linf, r)     centered p-ball of radius r
//   cube                    box [-1, 1]^N
//   box(e)                  box [-e, e]^N
//   ellipsoid(a1, ..., am)  axis half-lengths, the last one repeated to fill N
//   nearball                ellipsoid with axis j of half-length 1 - 2^-j
//   scale(EXPR, s)
//   shift(EXPR, t)          translate by t along the first coordinate
//   cap(EXPR, EXPR)         intersection
// Malformed expressions throw PreconditionError.
ConvexBody parse_body(const std::string& expr, int N);

AmbientNorm parse_norm(const std::string& name);

}  // namespace cclab
