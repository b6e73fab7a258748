#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "revc/term.hpp"
#include "revc/type.hpp"

namespace revc {

class ParseError : public std::runtime_error {
 public:
  ParseError(SourceLoc loc, const std::string& message);
  SourceLoc loc;
};

struct Definition {
  Name name;
  TypePtr type;
  TermPtr body;  // closed except for references to earlier definitions
  SourceLoc loc;
};

// An ordered list of `def` blocks. Later definitions may refer to earlier
// ones; a definition may refer to itself (it is then wrapped in `Y`).
class SourceProgram {
 public:
  std::vector<Definition> definitions;
  std::map<std::string, TypePtr> type_aliases;
  Name entry;

  const Definition* find(Name name) const;
  const Definition& entry_definition() const;

  // The definition with every earlier definition substituted in, giving a
  // closed term.
  TermPtr resolve(Name name) const;
  TermPtr resolve_entry() const { return resolve(entry); }
};

// Whole `.pcfl` file. The entry is `main` when present, else the last definition.
SourceProgram parse_program(std::string_view source);

// A single expression, desugared to the core AST.
TermPtr parse_term(std::string_view source);

TypePtr parse_type(std::string_view source);

}  // namespace revc
