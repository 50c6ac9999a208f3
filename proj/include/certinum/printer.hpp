#pragma once

#include <string>

#include "certinum/program.hpp"

namespace certinum::lang {

/// Pretty-printers. Output re-parses to the same AST (parse of print of parse
/// is parse), with precedence-aware parenthesization.
std::string to_text(const Expr& e);
std::string to_text(const Cond& c);
std::string to_text(const Stmt& s, int indent = 0);
std::string to_text(const Program& p);
std::string to_text(const Value& v);

/// Fixed 17-significant-digit rendering used by the CLI for reals.
std::string format_real(double x);

}  // namespace certinum::lang
