#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "csys/errors.hpp"

namespace csys {

struct SourcePos {
  int line = 0;
  int column = 0;
  std::string str() const { return std::to_string(line) + ":" + std::to_string(column); }
};

// One line of a block: `words...` or `words... = values...`. Punctuation
// (":", "->", ";") is kept as separate words.
struct Entry {
  std::vector<std::string> words;
  std::vector<SourcePos> word_pos;
  bool assign = false;
  std::vector<std::string> values;
  std::vector<SourcePos> value_pos;
  SourcePos pos;

  const std::string& head() const { return words.front(); }
};

struct Block {
  std::string name;
  SourcePos pos;
  std::vector<Entry> entries;
};

struct SpecDocument {
  std::vector<Block> blocks;
  const Block* find(const std::string& name) const;
};

// Message prefixed by "line:column: ".
struct DslError : Error {
  DslError(SourcePos p, const std::string& message) : Error(p.str() + ": " + message), pos(p) {}
  SourcePos pos;
};

// Block names the parser accepts.
const std::vector<std::string>& known_blocks();

// Syntax only: tokens, block headers, known block names, no duplicates.
SpecDocument parse_syntax(std::string_view text);
// parse_syntax, then every reference is resolved and tables are checked for
// totality by building the model once (see workspace.hpp).
SpecDocument parse(std::string_view text);

// Canonical text: one entry per line, single spaces between tokens, a blank
// line between blocks, no comments.
std::string print(const SpecDocument& doc);
// The same canonical form computed line by line from raw text.
std::string normalize(std::string_view text);

}  // namespace csys
