#pragma once

// Gate-list text format. One gate per line:
//   X <t>
//   CX <c> <t>
//   CCX <c1> <c2> <t>
// Header line `# width <W>`; other lines starting with '#' are comments.

#include "revarith/circuit.hpp"

#include <iosfwd>
#include <string>

namespace revarith {

std::string serialize_gatelist(const Circuit& circuit);
void write_gatelist(std::ostream& os, const Circuit& circuit);

Circuit parse_gatelist(const std::string& text);
Circuit read_gatelist(std::istream& is);

} // namespace revarith
