#include "perfclose/parser.hpp"

#include <cctype>
#include <cstdint>
#include <vector>

#include "perfclose/errors.hpp"

namespace perfclose {

ParseError::ParseError(const std::string& message, int line, int column)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
      line_(line),
      column_(column) {}

bool is_valid_name(std::string_view name) {
  if (name.empty() || name == "t" || name == "rt") return false;
  auto head = static_cast<unsigned char>(name.front());
  if (!std::isalpha(head) && head != '_') return false;
  for (char c : name) {
    auto u = static_cast<unsigned char>(c);
    if (!std::isalnum(u) && u != '_') return false;
  }
  return true;
}

namespace {

class Reader {
 public:
  Reader(std::string_view text, const ParseContext& ctx) : text_(text), ctx_(ctx) {}

  PerfElem element() {
    PerfElem x = expr();
    finish();
    return x;
  }

  PerfMatrix matrix() {
    expect('[');
    std::vector<std::vector<PerfElem>> rows;
    do {
      rows.push_back(row());
    } while (accept(','));
    expect(']');
    finish();
    const std::size_t cols = rows.front().size();
    std::vector<PerfElem> data;
    for (auto& r : rows) {
      if (r.size() != cols) fail("ragged matrix rows");
      for (auto& x : r) data.push_back(std::move(x));
    }
    return PerfMatrix(rows.size(), cols, std::move(data));
  }

 private:
  std::vector<PerfElem> row() {
    expect('[');
    std::vector<PerfElem> r;
    do {
      r.push_back(expr());
    } while (accept(','));
    expect(']');
    return r;
  }

  PerfElem expr() {
    PerfElem x = term();
    for (;;) {
      if (accept('+')) {
        x += term();
      } else if (accept('-')) {
        x -= term();
      } else {
        return x;
      }
    }
  }

  PerfElem term() {
    PerfElem x = factor();
    for (;;) {
      if (accept('*')) {
        x *= factor();
      } else if (peek() == '/') {
        const std::size_t at = pos_;
        ++pos_;
        PerfElem y = factor();
        if (y.is_zero()) throw_at<DivisionByZero>(at, "division by zero");
        x /= y;
      } else {
        return x;
      }
    }
  }

  PerfElem factor() {
    PerfElem x = atom();
    if (!accept('^')) return x;
    const std::size_t at = pos_;
    std::int64_t e = signed_integer();
    if (e < 0 && x.is_zero()) throw_at<DivisionByZero>(at, "negative power of zero");
    return x.pow(e);
  }

  PerfElem atom() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) return PerfElem::constant(ctx_.modulus, integer_mod_p());
    if (c == '(') {
      ++pos_;
      PerfElem x = expr();
      expect(')');
      return x;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t at = pos_;
      std::string_view word = identifier();
      if (word == "t") return PerfElem::t(ctx_.modulus);
      if (word == "rt") return root();
      if (ctx_.names) {
        if (auto v = ctx_.names(word)) {
          require_same_modulus(ctx_.modulus, v->modulus(), "name lookup");
          return *v;
        }
      }
      pos_ = at;
      fail("unknown name '" + std::string(word) + "'");
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  PerfElem root() {
    expect('(');
    PerfElem x = expr();
    expect(',');
    const std::size_t at = pos_;
    std::int64_t k = signed_integer();
    if (k < 0) {
      pos_ = at;
      fail("root order must be non-negative");
    }
    expect(')');
    for (std::int64_t i = 0; i < k; ++i) x = x.pth_root(ctx_.level_cap);
    return x;
  }

  std::string_view identifier() {
    const std::size_t start = pos_;
    while (pos_ < text_.size()) {
      auto u = static_cast<unsigned char>(text_[pos_]);
      if (!std::isalnum(u) && u != '_') break;
      ++pos_;
    }
    return text_.substr(start, pos_ - start);
  }

  std::int64_t integer_mod_p() {
    const std::uint64_t p = ctx_.modulus.value();
    std::uint64_t r = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      r = (r * 10 + static_cast<std::uint64_t>(text_[pos_] - '0')) % p;
      ++pos_;
    }
    return static_cast<std::int64_t>(r);
  }

  std::int64_t signed_integer() {
    skip_space();
    bool negative = false;
    if (pos_ < text_.size() && text_[pos_] == '-') {
      negative = true;
      ++pos_;
    }
    if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_]))) fail("expected an integer");
    std::int64_t v = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      if (v > (INT64_MAX - 9) / 10) fail("integer too large");
      v = v * 10 + (text_[pos_] - '0');
      ++pos_;
    }
    return negative ? -v : v;
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  char peek() {
    skip_space();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  bool accept(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }

  void expect(char c) {
    if (!accept(c)) {
      if (pos_ >= text_.size()) fail(std::string("expected '") + c + "' before end of input");
      fail(std::string("expected '") + c + "'");
    }
  }

  void finish() {
    skip_space();
    if (pos_ < text_.size()) fail(std::string("unexpected trailing '") + text_[pos_] + "'");
  }

  std::pair<int, int> position(std::size_t at) const {
    int line = 1;
    int column = 1;
    for (std::size_t i = 0; i < at && i < text_.size(); ++i) {
      if (text_[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    return {line, column};
  }

  [[noreturn]] void fail(const std::string& message) const {
    auto [line, column] = position(pos_);
    throw ParseError(message, line, column);
  }

  template <class E>
  [[noreturn]] void throw_at(std::size_t at, const std::string& message) const {
    auto [line, column] = position(at);
    throw E(std::to_string(line) + ":" + std::to_string(column) + ": " + message);
  }

  std::string_view text_;
  const ParseContext& ctx_;
  std::size_t pos_ = 0;
};

}  // namespace

PerfElem parse_element(std::string_view text, const ParseContext& ctx) { return Reader(text, ctx).element(); }

PerfMatrix parse_matrix(std::string_view text, const ParseContext& ctx) { return Reader(text, ctx).matrix(); }

}  // namespace perfclose
