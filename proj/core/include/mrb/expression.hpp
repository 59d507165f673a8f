#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mrb/linalg.hpp"
#include "mrb/operated.hpp"
#include "mrb/opring.hpp"

namespace mrb {

/// Product of basis labels occupying one slot; no factors means the unit.
struct ExpressionSlot {
  std::vector<std::string> factors;
  std::size_t column = 0;
};

/// Either an operator word `e1 Q[1] e2` or an operated word `e1 . 1 . e2`.
/// A word with a single slot is valid in both syntaxes.
struct ExpressionWord {
  enum class Syntax { operator_word, operated_word };

  Syntax syntax = Syntax::operator_word;
  std::vector<ExpressionSlot> slots;  // ops.size() + 1 entries
  std::vector<std::string> ops;
  std::optional<std::string> generator;
  std::size_t column = 0;
};

struct ExpressionTerm {
  Scalar coefficient;
  ExpressionWord word;
};

struct ExpressionAst {
  std::vector<ExpressionTerm> terms;

  /// Sorted distinct generator names.
  std::vector<std::string> generators() const;
};

/// expr := ['-'] term (('+'|'-') term)* [':' generator]
/// term := (rational '*')? (word | '(' word [':' generator] ')') | rational
/// A trailing generator applies to every term that does not name its own.
/// Throws ParseError with the 1-based line and column of the offending token.
ExpressionAst parse_expression(std::string_view text);

std::string to_string(const ExpressionAst& ast);

/// Throws InputError when a term carries a generator or uses the operated
/// syntax, UnknownLabel for labels outside the instance.
OpElement to_op_element(const ExpressionAst& ast, const OperatorRing& ring);
/// Every term must carry a generator from `generators`.
FreeModuleElement to_module_element(const ExpressionAst& ast, const OperatorRing& ring,
                                    const std::vector<std::string>& generators);
OperatedElement to_operated_element(const ExpressionAst& ast, const OperatedFree& free);

}  // namespace mrb
