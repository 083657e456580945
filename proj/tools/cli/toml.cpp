// Copyright 2026 The imdecide Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "toml.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

namespace imdecide::cli {
namespace {

std::string where(const std::string& source, std::size_t line, std::size_t column) {
  return source + ":" + std::to_string(line) + ":" + std::to_string(column) + ": ";
}

bool bare_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
}

class LineParser {
 public:
  LineParser(const std::string& text, std::size_t line, const std::string& source)
      : text_(text), line_(line), source_(source) {}

  [[noreturn]] void fail(const std::string& message) const {
    throw ConfigError(source_, line_, pos_ + 1, message);
  }

  void skip_space() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t')) ++pos_;
  }

  bool at_end() {
    skip_space();
    return pos_ >= text_.size() || text_[pos_] == '#';
  }

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
  std::size_t column() const { return pos_ + 1; }

  void expect(char c) {
    skip_space();
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  std::string key() {
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && bare_char(text_[pos_])) ++pos_;
    if (start == pos_) fail("expected a key");
    return text_.substr(start, pos_ - start);
  }

  nlohmann::json value() {
    skip_space();
    const char c = peek();
    if (c == '"') return string();
    if (c == '[') return array();
    if (c == '\0' || c == '#') fail("missing value");
    return scalar();
  }

 private:
  nlohmann::json string() {
    const std::size_t open = pos_++;
    std::string out;
    while (true) {
      if (pos_ >= text_.size()) {
        pos_ = open;
        fail("unterminated string");
      }
      const char c = text_[pos_++];
      if (c == '"') return out;
      if (c != '\\') {
        out += c;
        continue;
      }
      if (pos_ >= text_.size()) fail("unterminated escape");
      switch (text_[pos_++]) {
        case '"': out += '"'; break;
        case '\\': out += '\\'; break;
        case 'n': out += '\n'; break;
        case 't': out += '\t'; break;
        default: --pos_; fail("unsupported escape");
      }
    }
  }

  nlohmann::json array() {
    ++pos_;
    nlohmann::json out = nlohmann::json::array();
    while (true) {
      skip_space();
      if (peek() == ']') {
        ++pos_;
        return out;
      }
      if (peek() == '\0') fail("unterminated array");
      out.push_back(value());
      skip_space();
      if (peek() == ',') {
        ++pos_;
      } else if (peek() != ']') {
        fail("expected ',' or ']' in array");
      }
    }
  }

  nlohmann::json scalar() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_])) &&
           text_[pos_] != ',' && text_[pos_] != ']' && text_[pos_] != '#') {
      ++pos_;
    }
    std::string token = text_.substr(start, pos_ - start);
    if (token == "true") return true;
    if (token == "false") return false;
    if (token == "inf" || token == "+inf") return std::numeric_limits<double>::infinity();
    if (token == "-inf") return -std::numeric_limits<double>::infinity();
    std::string digits;
    for (std::size_t i = 0; i < token.size(); ++i) {
      if (token[i] != '_') {
        digits += token[i];
        continue;
      }
      if (i == 0 || i + 1 == token.size() || !std::isdigit(static_cast<unsigned char>(token[i - 1])) ||
          !std::isdigit(static_cast<unsigned char>(token[i + 1]))) {
        pos_ = start + i;
        fail("misplaced '_' in number");
      }
    }
    const bool is_float = digits.find_first_of(".eE") != std::string::npos;
    std::size_t used = 0;
    try {
      if (is_float) {
        const double v = std::stod(digits, &used);
        if (used == digits.size()) return v;
      } else {
        const long long v = std::stoll(digits, &used, 10);
        if (used == digits.size()) return v;
      }
    } catch (const std::out_of_range&) {
      pos_ = start;
      fail("number out of range: " + token);
    } catch (const std::invalid_argument&) {
    }
    pos_ = start;
    fail("invalid value '" + token + "'");
  }

  const std::string& text_;
  std::size_t line_;
  const std::string& source_;
  std::size_t pos_ = 0;
};

}  // namespace

ConfigError::ConfigError(std::string source, std::size_t line, std::size_t column,
                         const std::string& message)
    : std::runtime_error(where(source, line, column) + message),
      source_(std::move(source)),
      line_(line),
      column_(column) {}

void TomlDocument::fail(const std::string& path, const std::string& message) const {
  auto it = positions.find(path);
  if (it == positions.end()) it = positions.find(path.substr(0, path.rfind('.')));
  if (it == positions.end()) throw ConfigError(source, 1, 1, message);
  throw ConfigError(source, it->second.first, it->second.second, message);
}

TomlDocument parse_toml(const std::string& text, const std::string& source) {
  TomlDocument doc;
  doc.source = source;
  nlohmann::json& root = doc.data;
  root = nlohmann::json::object();
  nlohmann::json* table = &root;
  std::string prefix;
  std::set<std::string> seen_tables;
  std::istringstream in(text);
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    LineParser p(raw, line_no, source);
    if (p.at_end()) continue;
    if (p.peek() == '[') {
      p.expect('[');
      std::string name;
      table = &root;
      while (true) {
        const std::size_t col = p.column();
        const std::string part = p.key();
        name += (name.empty() ? "" : ".") + part;
        auto& next = (*table)[part];
        if (next.is_null()) next = nlohmann::json::object();
        if (!next.is_object()) throw ConfigError(source, line_no, col, "'" + name + "' is not a table");
        table = &next;
        p.skip_space();
        if (p.peek() != '.') break;
        p.expect('.');
      }
      p.expect(']');
      if (!seen_tables.insert(name).second) {
        throw ConfigError(source, line_no, 1, "duplicate table [" + name + "]");
      }
      if (!p.at_end()) p.fail("unexpected text after table header");
      doc.positions[name] = {line_no, 1};
      prefix = name + ".";
      continue;
    }
    const std::size_t key_col = p.column();
    const std::string key = p.key();
    p.expect('=');
    nlohmann::json v = p.value();
    if (!p.at_end()) p.fail("unexpected text after value");
    if (table->contains(key)) throw ConfigError(source, line_no, key_col, "duplicate key '" + key + "'");
    (*table)[key] = std::move(v);
    doc.positions[prefix + key] = {line_no, key_col};
  }
  return doc;
}

TomlDocument load_toml(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(path, 0, 0, "cannot open config file");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_toml(text.str(), path);
}

}  // namespace imdecide::cli
