#include <array>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <string>

#include "ndmm/io.hpp"

namespace ndmm {

namespace {

bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v'; }

class RatingParser {
 public:
  explicit RatingParser(std::string_view text) : text_(text) {}

  NeutroValue parse() {
    skip_space();
    if (at_end()) throw ParseError("empty rating", pos_);

    double sign = 1.0;
    if (peek() == '+' || peek() == '-') {
      sign = peek() == '-' ? -1.0 : 1.0;
      ++pos_;
      skip_space();
    }
    term(sign);

    for (;;) {
      skip_space();
      if (at_end()) break;
      const char op = peek();
      if (op != '+' && op != '-') throw ParseError(unexpected(), pos_);
      const std::size_t op_pos = pos_++;
      skip_space();
      if (at_end()) throw ParseError("trailing operator", op_pos);
      term(op == '-' ? -1.0 : 1.0);
    }
    return value_;
  }

 private:
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }

  void skip_space() {
    while (!at_end() && is_space(peek())) ++pos_;
  }

  std::string unexpected() const {
    const auto c = static_cast<unsigned char>(peek());
    if (c >= 0x20 && c < 0x7f) return std::string("unexpected character '") + static_cast<char>(c) + "'";
    static constexpr std::array<char, 16> kHex{'0', '1', '2', '3', '4', '5', '6', '7',
                                               '8', '9', 'a', 'b', 'c', 'd', 'e', 'f'};
    return std::string("unexpected byte 0x") + kHex[c >> 4] + kHex[c & 0xf];
  }

  void term(double sign) {
    if (peek() == 'I') {
      ++pos_;
      accumulate(value_.ind, sign);
      return;
    }
    if (!is_digit(peek()) && peek() != '.') {
      if (peek() == '+' || peek() == '-') throw ParseError("unexpected operator", pos_);
      throw ParseError(unexpected(), pos_);
    }
    const double number = sign * scan_number();
    skip_space();
    if (!at_end() && peek() == 'I') {
      ++pos_;
      accumulate(value_.ind, number);
    } else {
      accumulate(value_.det, number);
    }
  }

  double scan_number() {
    const std::size_t start = pos_;
    std::size_t digits = 0;
    while (!at_end() && is_digit(peek())) ++pos_, ++digits;
    if (!at_end() && peek() == '.') {
      ++pos_;
      while (!at_end() && is_digit(peek())) ++pos_, ++digits;
    }
    if (digits == 0) throw ParseError("malformed number", start);
    if (!at_end() && (peek() == 'e' || peek() == 'E')) {
      ++pos_;
      if (!at_end() && (peek() == '+' || peek() == '-')) ++pos_;
      std::size_t exp_digits = 0;
      while (!at_end() && is_digit(peek())) ++pos_, ++exp_digits;
      if (exp_digits == 0) throw ParseError("malformed number", start);
    }

    double out = 0.0;
    const char* first = text_.data() + start;
    const char* last = text_.data() + pos_;
    const auto [ptr, ec] = std::from_chars(first, last, out);
    if (ec == std::errc::result_out_of_range) {
      // Underflow reads as the nearest subnormal or zero; only overflow is an error.
      const std::string copy(first, last);
      out = std::strtod(copy.c_str(), nullptr);
      if (!std::isfinite(out)) throw ParseError("number out of range", start);
      return out;
    }
    if (ec != std::errc{} || ptr != last) throw ParseError("malformed number", start);
    return out;
  }

  void accumulate(double& slot, double amount) {
    slot += amount;
    if (!std::isfinite(slot)) throw ParseError("non-finite result", pos_);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  NeutroValue value_;
};

}  // namespace

NeutroValue parse_rating(std::string_view token) { return RatingParser(token).parse(); }

std::string format_number(double x) {
  std::array<char, 32> buf{};
  const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  if (ec != std::errc{}) return "nan";
  return std::string(buf.data(), end);
}

std::string format_rating(const NeutroValue& v) {
  if (v.ind == 0.0) return format_number(v.det);

  const auto coefficient = [](double c) -> std::string {
    if (c == 1.0) return "";
    if (c == -1.0) return "-";
    return format_number(c);
  };
  if (v.det == 0.0) return coefficient(v.ind) + "I";
  return format_number(v.det) + (v.ind < 0.0 ? "-" : "+") + coefficient(std::abs(v.ind)) + "I";
}

}  // namespace ndmm
