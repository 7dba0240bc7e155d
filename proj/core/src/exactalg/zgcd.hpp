#pragma once

#include "weylham/detail/sparse_poly.hpp"

namespace weylham::detail {

// q == scale * z with z primitive over Z and positive leading coefficient
ZPoly to_primitive_z(const QPoly& q, mpq_class* scale = nullptr);
QPoly to_q(const ZPoly& z);

mpz_class integer_content(const ZPoly& f);

// gcd over Z[x...], positive leading coefficient; gcd(0, 0) = 0
ZPoly zgcd(const ZPoly& f, const ZPoly& g);

// gcd via primitive PRS only (the fallback path, exposed for testing)
ZPoly zgcd_prs(const ZPoly& f, const ZPoly& g);

}  // namespace weylham::detail
