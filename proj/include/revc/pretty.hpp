#pragma once

#include <string>

#include "revc/syntax.hpp"
#include "revc/term.hpp"

namespace revc {

// Concrete syntax for a core term, keeping the list, let and boolean sugar.
// Parsing the output yields an alpha-equivalent term (WireRefs print as `#n`
// and do not re-parse).
std::string pretty(const TermPtr& t);

// `def` blocks for every definition, type aliases expanded.
std::string pretty(const SourceProgram& prog);

}  // namespace revc
