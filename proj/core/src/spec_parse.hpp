#pragma once

// Shared helpers for the small "name(arg, arg, ...)" spec grammar used by the
// function zoo and the matrix-family factory.

#include <charconv>
#include <cctype>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace trigapprox::detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
    s.remove_prefix(1);
  }
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
    s.remove_suffix(1);
  }
  return s;
}

struct CallSpec {
  std::string name;
  std::vector<std::string> args;
  bool has_parens = false;
};

/// Splits "name(a, b(c, d), e)" into name and top-level arguments.
inline CallSpec parse_call(std::string_view text) {
  text = trim(text);
  CallSpec call;
  const auto open = text.find('(');
  if (open == std::string_view::npos) {
    call.name = std::string(text);
    return call;
  }
  if (text.back() != ')') {
    throw std::invalid_argument("unbalanced parentheses in spec '" + std::string(text) + "'");
  }
  call.has_parens = true;
  call.name = std::string(trim(text.substr(0, open)));
  const std::string_view body = text.substr(open + 1, text.size() - open - 2);
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= body.size(); ++i) {
    if (i == body.size() || (body[i] == ',' && depth == 0)) {
      const auto piece = trim(body.substr(start, i - start));
      if (!piece.empty() || i != body.size() || !call.args.empty()) {
        call.args.emplace_back(piece);
      }
      start = i + 1;
      continue;
    }
    if (body[i] == '(') {
      ++depth;
    } else if (body[i] == ')') {
      if (--depth < 0) {
        throw std::invalid_argument("unbalanced parentheses in spec '" + std::string(text) + "'");
      }
    }
  }
  if (depth != 0) {
    throw std::invalid_argument("unbalanced parentheses in spec '" + std::string(text) + "'");
  }
  return call;
}

inline double parse_real(std::string_view text) {
  text = trim(text);
  double value = 0.0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last || text.empty()) {
    throw std::invalid_argument("expected a number, got '" + std::string(text) + "'");
  }
  return value;
}

inline long parse_integer(std::string_view text) {
  text = trim(text);
  long value = 0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last || text.empty()) {
    throw std::invalid_argument("expected an integer, got '" + std::string(text) + "'");
  }
  return value;
}

} // namespace trigapprox::detail
