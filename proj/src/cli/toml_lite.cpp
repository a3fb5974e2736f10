#include "shiftlab/cli/toml_lite.hpp"

#include <fstream>
#include <sstream>

#include "shiftlab/errors.hpp"
#include "shiftlab/parse_util.hpp"

namespace shiftlab::toml {
namespace {

class LineParser {
 public:
  LineParser(std::string_view text, int line) : s_(text), line_(line) {}

  Value value() {
    skip_ws();
    if (pos_ >= s_.size()) fail("missing value");
    const char c = s_[pos_];
    if (c == '"' || c == '\'') return string_value();
    if (c == '[') return array_value();
    return bare_value();
  }

  void expect_end() {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] != '#') fail("unexpected trailing text");
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw ContractError("line " + std::to_string(line_) + ": " + what);
  }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;
  int line_;

  void skip_ws() {
    while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t')) ++pos_;
  }

  Value string_value() {
    const char quote = s_[pos_++];
    Value v;
    while (pos_ < s_.size() && s_[pos_] != quote) {
      char c = s_[pos_++];
      if (quote == '"' && c == '\\' && pos_ < s_.size()) {
        const char e = s_[pos_++];
        c = e == 'n' ? '\n' : e == 't' ? '\t' : e;
      }
      v.text.push_back(c);
    }
    if (pos_ >= s_.size()) fail("unterminated string");
    ++pos_;
    return v;
  }

  Value array_value() {
    ++pos_;
    Value v;
    v.kind = Value::Kind::Array;
    for (;;) {
      skip_ws();
      if (pos_ >= s_.size()) fail("unterminated array");
      if (s_[pos_] == ']') { ++pos_; return v; }
      Value item = value();
      if (item.kind == Value::Kind::Array) fail("nested arrays are not supported");
      v.items.push_back(std::move(item));
      skip_ws();
      if (pos_ < s_.size() && s_[pos_] == ',') ++pos_;
      else if (pos_ < s_.size() && s_[pos_] != ']') fail("expected ',' or ']' in array");
    }
  }

  Value bare_value() {
    const std::size_t start = pos_;
    while (pos_ < s_.size() && s_[pos_] != ',' && s_[pos_] != ']' && s_[pos_] != '#' &&
           s_[pos_] != ' ' && s_[pos_] != '\t') {
      ++pos_;
    }
    const std::string_view word = s_.substr(start, pos_ - start);
    Value v;
    v.text = std::string(word);
    if (word == "true" || word == "false") {
      v.kind = Value::Kind::Bool;
      v.boolean = word == "true";
      return v;
    }
    v.kind = Value::Kind::Number;
    std::string cleaned;
    for (char c : word) if (c != '_') cleaned.push_back(c);
    try {
      v.number = parse_real(cleaned, "number");
    } catch (const ContractError&) {
      fail("invalid value '" + v.text + "'");
    }
    return v;
  }
};

}  // namespace

Document parse(std::string_view text) {
  Document doc;
  doc[""];
  std::string section;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const std::string body = trim(raw);
    if (body.empty() || body.front() == '#') continue;
    if (body.front() == '[') {
      const auto close = body.find(']');
      if (close == std::string_view::npos) LineParser(body, line).fail("unterminated section header");
      section = std::string(trim(body.substr(1, close - 1)));
      if (section.empty()) LineParser(body, line).fail("empty section name");
      LineParser(body.substr(close + 1), line).expect_end();
      doc[section];
      continue;
    }
    const auto eq = body.find('=');
    if (eq == std::string_view::npos) LineParser(body, line).fail("expected key = value");
    std::string key(trim(body.substr(0, eq)));
    if (key.size() >= 2 && (key.front() == '"' || key.front() == '\'')) key = key.substr(1, key.size() - 2);
    if (key.empty()) LineParser(body, line).fail("empty key");
    const std::string rhs = body.substr(eq + 1);
    LineParser p(rhs, line);
    Value v = p.value();
    p.expect_end();
    auto& table = doc[section];
    if (table.count(key)) p.fail("duplicate key '" + key + "'");
    table.emplace(std::move(key), std::move(v));
  }
  return doc;
}

Document parse_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ContractError("cannot read config file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

}  // namespace shiftlab::toml
