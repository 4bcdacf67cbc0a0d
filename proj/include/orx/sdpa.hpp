#pragma once

#include <string>

#include "orx/conic.hpp"

namespace orx {

// SDPA sparse (.dat-s) text.  Free scalars are split into differences of
// nonnegatives inside one LP block; the split is recorded in a leading comment
// so import can undo it.  Off-diagonal PSD entries convert between svec
// coordinates (sqrt 2 scaling) and plain matrix entries.
std::string export_sdpa(const ConicProgram& prog);
ConicProgram import_sdpa(const std::string& text);

// problem-data equality (labels and the normalization flag are not part of the
// exchange format)
bool structurally_equal(const ConicProgram& a, const ConicProgram& b);

}  // namespace orx
