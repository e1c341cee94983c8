#pragma once

#include <string_view>

#include <json.hpp>

#include "srgcert/rational_matrix.hpp"

namespace srgcert {

/// Parses the bracketed matrix expression, optionally preceded by a
/// `dim <m>` header line. Lines starting with '#' are comments.
///
///   matrix  = "[" row (";" row)* "]"
///   row     = expr ("," expr)*
///   expr    = ["+"|"-"] term (("+"|"-") term)*
///   term    = factor (("*"|"/") factor | factor)*
///   factor  = primary ["^" integer]
///   primary = number | "s" | "(" expr ")"
///
/// Juxtaposition multiplies when the next token is "s" or "(", so both
/// "50 s" and "50*s" work. Entries are stored as written: common factors are
/// never cancelled. Throws ParseError (with line/column) on syntax errors,
/// ragged or non-square rows, and improper entries.
RationalMatrix parse_rational_matrix(std::string_view text);

/// Structured format: {"m": m, "entries": [[{"num": [...], "den": [...]}, ...], ...]}
/// with ascending-degree coefficient arrays.
RationalMatrix rational_matrix_from_json(const nlohmann::json& doc);
nlohmann::json to_json(const RationalMatrix& h);

}  // namespace srgcert
