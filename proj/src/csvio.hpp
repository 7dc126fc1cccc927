#pragma once

#include <string>

namespace nmqed {

// Canonical numeric formatting for all text output: %.17g round-trips every
// double bit-exactly, so identical configs give byte-identical files.
std::string fmt17(double v);
std::string fmt17(int v);

// Short form for file names and labels (12 significant digits).
std::string fmt_short(double v);

}  // namespace nmqed
