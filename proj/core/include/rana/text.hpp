#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "rana/barafa.hpp"
#include "rana/rana.hpp"

namespace rana {

// .rana documents:
//
//   rana <ordinary|explicit-dual|positive|ernna> <total|partial>
//   orbit NAME arity K [domain {i, j}] [family F] { FORMULA }
//   init NAME            or   init formula { FORMULA }
//
// Formulas use \/ /\ ~ true false eps, <rK> q(args), <|x> q(args) and the
// box forms [rK] and [|x]. Arguments are rK, the bound identifier, or _.
// Inside an init formula a bare arity-0 orbit name stands for its formula.
// A `#` comment on the line directly above an orbit becomes its note.
// Throws ParseError, then ValidationError from require_valid.
Rana parse_rana(std::string_view text);
Rana load_rana(const std::filesystem::path& path);
std::string print_rana(const Rana& a);

// AFA dump: `afa`, then `states:`, `alphabet:`, `initial:`, `finals:` lines,
// then one `STATE LETTER : FORMULA` line per transition. The extra bar name
// prints as |*.
std::string print_afa(const BarAfa& a);
BarAfa parse_afa(std::string_view text);

}  // namespace rana
