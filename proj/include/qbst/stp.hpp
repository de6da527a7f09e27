#pragma once

#include <string>
#include <string_view>

#include "qbst/model.hpp"

namespace qbst {

/// Reads the SteinLib STP subset: `SECTION Graph` (Nodes, Edges, `E u v w`
/// with integer or p/q weights), `SECTION Terminals` (`T v`, optional
/// `Root v`). Node ids in the file are 1-based. Other sections are skipped.
/// Throws Error(ParseError) with the line number, or forwards validation
/// errors.
Instance parse_stp(std::string_view text);

/// Writes the same subset; parse_stp(serialize_stp(i)) reproduces i.
std::string serialize_stp(const Instance& inst);

}  // namespace qbst
