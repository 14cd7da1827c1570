#pragma once

#include <cstdint>
#include <string>

#include "asrefine/ast.hpp"

namespace asrefine {

// Car-alarm-system model family, the standard benchmark fixture. `scale`
// multiplies the three timing constants (20, 30, 270) and, by default, the
// upper bound of the `int` type used for the 'after' delay parameter;
// `int_hi` overrides that bound (used to build reduced-domain variants whose
// explicit enumeration stays cheap). The scale-1 text is shipped as
// models/cas_1.as.
std::string make_cas_text(int scale = 1, int64_t int_hi = -1);

// Parsed and validated; throws std::logic_error if the generated text does
// not parse (a programming error in the generator).
Model make_cas(int scale = 1, int64_t int_hi = -1);

}  // namespace asrefine
