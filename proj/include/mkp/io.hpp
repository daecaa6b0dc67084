#pragma once

#include <charconv>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "mkp/error.hpp"
#include "mkp/instance.hpp"

namespace mkp {

inline constexpr std::int64_t kMaxItems = 10'000'000;
inline constexpr std::int64_t kMaxResources = 100'000;
inline constexpr std::int64_t kMaxMatrixEntries = 200'000'000;

namespace detail {

// Whitespace tokenizer that remembers 1-based line/column of every token.
class TokenReader {
 public:
  explicit TokenReader(std::string_view text) : text_(text) {}

  struct Token {
    std::string_view text;
    std::size_t line;
    std::size_t column;
  };

  std::optional<Token> next() {
    skip_space();
    if (pos_ >= text_.size()) return std::nullopt;
    Token tok{{}, line_, column_};
    const std::size_t begin = pos_;
    while (pos_ < text_.size() && !is_space(text_[pos_])) advance();
    tok.text = text_.substr(begin, pos_ - begin);
    return tok;
  }

  bool at_end() {
    skip_space();
    return pos_ >= text_.size();
  }

  // Whether the first line of the input holds exactly one token.
  static bool single_token_first_line(std::string_view text) {
    std::size_t p = 0;
    while (p < text.size() && text[p] != '\n' && is_space(text[p])) ++p;
    if (p >= text.size() || text[p] == '\n') return false;
    while (p < text.size() && !is_space(text[p])) ++p;
    while (p < text.size() && text[p] != '\n') {
      if (!is_space(text[p])) return false;
      ++p;
    }
    return true;
  }

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  static bool is_space(char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f';
  }
  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }
  void skip_space() {
    while (pos_ < text_.size() && is_space(text_[pos_])) advance();
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t column_ = 1;
};

inline std::int64_t read_integer(TokenReader& in, const std::string& what) {
  const auto tok = in.next();
  if (!tok) {
    throw ParseError(in.line(), in.column(), "unexpected end of input, expected " + what);
  }
  std::int64_t value = 0;
  const char* first = tok->text.data();
  const char* last = first + tok->text.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec == std::errc::result_out_of_range) {
    throw ParseError(tok->line, tok->column,
                     "value '" + std::string(tok->text) + "' out of range for " + what);
  }
  if (ec != std::errc() || ptr != last) {
    throw ParseError(tok->line, tok->column,
                     "expected integer " + what + ", found '" + std::string(tok->text) + "'");
  }
  return value;
}

inline Instance read_one(TokenReader& in, std::string name) {
  const std::size_t line = in.line();
  const std::size_t column = in.column();
  const std::int64_t n = read_integer(in, "item count");
  const std::int64_t m = read_integer(in, "resource count");
  const std::int64_t best = read_integer(in, "best known value");
  if (n < 1 || n > kMaxItems) {
    throw ParseError(line, column, "item count " + std::to_string(n) + " outside [1, " +
                                       std::to_string(kMaxItems) + "]");
  }
  if (m < 1 || m > kMaxResources) {
    throw ParseError(line, column, "resource count " + std::to_string(m) + " outside [1, " +
                                       std::to_string(kMaxResources) + "]");
  }
  if (n * m > kMaxMatrixEntries) throw ParseError(line, column, "weight matrix too large");
  if (best < 0) throw ParseError(line, column, "best known value is negative");

  const auto items = static_cast<std::size_t>(n);
  const auto rows = static_cast<std::size_t>(m);
  std::vector<Value> profits(items);
  for (std::size_t j = 0; j < items; ++j)
    profits[j] = read_integer(in, "profit of item " + std::to_string(j));
  std::vector<std::vector<Value>> weights(rows, std::vector<Value>(items));
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < items; ++j)
      weights[i][j] = read_integer(in, "weight (" + std::to_string(i) + ", " + std::to_string(j) + ")");
  std::vector<Value> capacities(rows);
  for (std::size_t i = 0; i < rows; ++i)
    capacities[i] = read_integer(in, "capacity of resource " + std::to_string(i));

  try {
    return Instance(std::move(profits), weights, std::move(capacities), std::move(name),
                    best > 0 ? std::optional<Value>(best) : std::nullopt);
  } catch (const StructuralError& e) {
    throw ParseError(line, column, std::string("invalid instance: ") + e.what());
  }
}

}  // namespace detail

/**
 * Parses OR-Library text: `n m best_known`, n profits, m rows of n weights,
 * m capacities. A best_known of 0 means unknown. When the first line holds a
 * single token it is an instance count and that many instances follow.
 *
 * Single instances are named `name`; instances of a multi-instance file get
 * `name-00`, `name-01`, ...
 */
inline std::vector<Instance> parse_instances(std::string_view text, const std::string& name = "instance") {
  detail::TokenReader in(text);
  if (in.at_end()) throw ParseError(1, 1, "empty input");
  std::vector<Instance> out;
  if (detail::TokenReader::single_token_first_line(text)) {
    const std::size_t line = in.line();
    const std::size_t column = in.column();
    const std::int64_t count = detail::read_integer(in, "instance count");
    if (count < 1 || count > 100'000) {
      throw ParseError(line, column, "instance count " + std::to_string(count) + " out of range");
    }
    for (std::int64_t k = 0; k < count; ++k) {
      std::string suffix = std::to_string(k);
      if (suffix.size() < 2) suffix.insert(0, "0");
      out.push_back(detail::read_one(in, name + "-" + suffix));
    }
  } else {
    out.push_back(detail::read_one(in, name));
  }
  if (!in.at_end()) throw ParseError(in.line(), in.column(), "trailing data after last instance");
  return out;
}

// Exactly one instance expected.
inline Instance parse_instance(std::string_view text, const std::string& name = "instance") {
  auto all = parse_instances(text, name);
  if (all.size() != 1) {
    throw ParseError(1, 1, "expected a single instance, found " + std::to_string(all.size()));
  }
  return std::move(all.front());
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::vector<Instance> load_instances(const std::filesystem::path& path) {
  try {
    return parse_instances(read_file(path), path.stem().string());
  } catch (const ParseError& e) {
    throw ParseError(e.line(), e.column(), path.string() + ": " + e.message());
  }
}

// Single-instance layout, one logical block per line.
inline std::string serialize_instance(const Instance& inst) {
  std::ostringstream out;
  out << inst.num_items() << ' ' << inst.num_resources() << ' ' << inst.best_known().value_or(0)
      << '\n';
  auto write_row = [&](auto&& get, std::size_t count) {
    for (std::size_t k = 0; k < count; ++k) out << (k ? " " : "") << get(k);
    out << '\n';
  };
  write_row([&](std::size_t j) { return inst.profit(j); }, inst.num_items());
  for (std::size_t i = 0; i < inst.num_resources(); ++i)
    write_row([&](std::size_t j) { return inst.weight(i, j); }, inst.num_items());
  write_row([&](std::size_t i) { return inst.capacity(i); }, inst.num_resources());
  return out.str();
}

}  // namespace mkp
