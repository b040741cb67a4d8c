#ifndef MACSCOPE_PARSER_HPP
#define MACSCOPE_PARSER_HPP

#include <map>
#include <stdexcept>
#include <string>

#include "macscope/formula.hpp"

namespace macscope {

class ParseError : public std::runtime_error {
 public:
  enum class Kind { Syntax, UnknownSymbol, SortMismatch };

  ParseError(Kind kind, std::size_t offset, const std::string& message)
      : std::runtime_error(message + " at offset " + std::to_string(offset)),
        kind(kind),
        offset(offset) {}

  Kind kind;
  std::size_t offset;
};

/// Parses the workbench formula grammar against a signature. Sorts of free
/// variables are inferred from use (single-sorted signatures default);
/// declared_sorts pins them explicitly when inference cannot.
Formula parse_formula(const std::string& text, SignaturePtr sig,
                      const std::map<std::string, std::string>& declared_sorts = {});

}  // namespace macscope

#endif
