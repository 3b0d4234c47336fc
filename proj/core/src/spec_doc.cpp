#include "csys/spec_doc.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <regex>
#include <sstream>

#include "csys/workspace.hpp"

namespace csys {

const Block* SpecDocument::find(const std::string& name) const {
  for (const Block& b : blocks)
    if (b.name == name) return &b;
  return nullptr;
}

const std::vector<std::string>& known_blocks() {
  static const std::vector<std::string> names = {"category", "finset", "universe", "products", "pullbacks", "ccc",
                                                 "lcc",      "csystem", "ucf",     "suite",    "mutate"};
  return names;
}

namespace {

bool word_char(char c) {
  unsigned char u = static_cast<unsigned char>(c);
  return std::isalnum(u) || c == '_' || c == '.' || c == '\'' || c == '~' || c == '+' || c == '*' || c == '-' ||
         c == '/' || c == '!' || c == '^' || c == '@' || u >= 0x80;
}

struct Token {
  std::string text;
  SourcePos pos;
};

std::vector<Token> tokenize(std::string_view line, int lineno) {
  std::vector<Token> out;
  size_t i = 0;
  auto at = [&](size_t k) { return SourcePos{lineno, static_cast<int>(k) + 1}; };
  while (i < line.size()) {
    char c = line[i];
    if (c == '#') break;
    if (c == ' ' || c == '\t' || c == '\r') {
      ++i;
      continue;
    }
    if (c == '-' && i + 1 < line.size() && line[i + 1] == '>') {
      out.push_back({"->", at(i)});
      i += 2;
      continue;
    }
    if (c == '=' || c == ':' || c == ';') {
      out.push_back({std::string(1, c), at(i)});
      ++i;
      continue;
    }
    if (!word_char(c)) throw DslError(at(i), std::string("unexpected character '") + c + "'");
    size_t j = i;
    while (j < line.size() && word_char(line[j]) && !(line[j] == '-' && j + 1 < line.size() && line[j + 1] == '>'))
      ++j;
    out.push_back({std::string(line.substr(i, j - i)), at(i)});
    i = j;
  }
  return out;
}

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  size_t start = 0;
  while (start <= text.size()) {
    size_t nl = text.find('\n', start);
    if (nl == std::string_view::npos) {
      if (start < text.size()) lines.push_back(text.substr(start));
      break;
    }
    lines.push_back(text.substr(start, nl - start));
    start = nl + 1;
  }
  return lines;
}

}  // namespace

SpecDocument parse_syntax(std::string_view text) {
  SpecDocument doc;
  std::map<std::string, SourcePos> seen;
  auto lines = split_lines(text);
  for (size_t li = 0; li < lines.size(); ++li) {
    int lineno = static_cast<int>(li) + 1;
    std::string_view line = lines[li];
    size_t first = line.find_first_not_of(" \t\r");
    if (first == std::string_view::npos || line[first] == '#') continue;
    if (line[first] == '[') {
      SourcePos hp{lineno, static_cast<int>(first) + 1};
      size_t close = line.find(']', first);
      if (close == std::string_view::npos) throw DslError(hp, "unterminated block header");
      std::string name(line.substr(first + 1, close - first - 1));
      auto trim = [](std::string s) {
        s.erase(0, s.find_first_not_of(" \t"));
        s.erase(s.find_last_not_of(" \t") + 1);
        return s;
      };
      name = trim(name);
      std::string_view rest = line.substr(close + 1);
      size_t r = rest.find_first_not_of(" \t\r");
      if (r != std::string_view::npos && rest[r] != '#')
        throw DslError({lineno, static_cast<int>(close + 2 + r)}, "text after block header");
      const auto& known = known_blocks();
      if (std::find(known.begin(), known.end(), name) == known.end())
        throw DslError(hp, "unknown block [" + name + "]");
      if (auto it = seen.find(name); it != seen.end())
        throw DslError(hp, "duplicate block [" + name + "], first at " + it->second.str());
      seen[name] = hp;
      doc.blocks.push_back(Block{name, hp, {}});
      continue;
    }
    auto toks = tokenize(line, lineno);
    if (toks.empty()) continue;
    if (doc.blocks.empty()) throw DslError(toks.front().pos, "entry outside of any block");
    Entry e;
    e.pos = toks.front().pos;
    for (const Token& t : toks) {
      if (t.text == "=") {
        if (e.assign) throw DslError(t.pos, "second '=' on one line");
        e.assign = true;
        continue;
      }
      (e.assign ? e.values : e.words).push_back(t.text);
      (e.assign ? e.value_pos : e.word_pos).push_back(t.pos);
    }
    if (e.words.empty()) throw DslError(e.pos, "entry has no name before '='");
    if (e.assign && e.values.empty()) throw DslError(toks.back().pos, "missing value after '='");
    doc.blocks.back().entries.push_back(std::move(e));
  }
  return doc;
}

SpecDocument parse(std::string_view text) {
  SpecDocument doc = parse_syntax(text);
  Workspace::validate(doc);
  return doc;
}

std::string print(const SpecDocument& doc) {
  std::ostringstream os;
  bool first = true;
  for (const Block& b : doc.blocks) {
    if (!first) os << "\n";
    first = false;
    os << "[" << b.name << "]\n";
    for (const Entry& e : b.entries) {
      for (size_t i = 0; i < e.words.size(); ++i) os << (i ? " " : "") << e.words[i];
      if (e.assign) {
        os << " =";
        for (const auto& v : e.values) os << " " << v;
      }
      os << "\n";
    }
  }
  return os.str();
}

std::string normalize(std::string_view text) {
  static const std::regex punct("(->|=|:|;)");
  static const std::regex space("[ \\t\\r]+");
  std::ostringstream os;
  bool any_block = false;
  for (std::string_view raw : split_lines(text)) {
    std::string line(raw.substr(0, raw.find('#')));
    line = std::regex_replace(line, punct, " $1 ");
    line = std::regex_replace(line, space, " ");
    line.erase(0, line.find_first_not_of(' '));
    if (auto last = line.find_last_not_of(' '); last != std::string::npos) line.erase(last + 1);
    else line.clear();
    if (line.empty()) continue;
    if (line.front() == '[') {
      std::string name = line.substr(1, line.find(']') - 1);
      name.erase(0, name.find_first_not_of(' '));
      name.erase(name.find_last_not_of(' ') + 1);
      if (any_block) os << "\n";
      any_block = true;
      os << "[" << name << "]\n";
      continue;
    }
    os << line << "\n";
  }
  return os.str();
}

}  // namespace csys
