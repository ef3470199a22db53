#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "powerfree/errors.hpp"

namespace powerfree {

// Symbols are 0-based; display maps 0..9 -> '0'..'9' and 10..35 -> 'a'..'z'.
constexpr int kMaxAlphabet = 36;

inline char symbol_to_char(int s) {
  if (s < 0 || s >= kMaxAlphabet) fail(Errc::bad_symbol, "symbol out of display range");
  return s < 10 ? static_cast<char>('0' + s) : static_cast<char>('a' + (s - 10));
}

inline int char_to_symbol(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'z') return c - 'a' + 10;
  fail(Errc::bad_symbol, std::string("bad symbol character '") + c + "'");
}

class Word {
 public:
  Word() = default;
  explicit Word(std::vector<std::uint8_t> symbols) : sym_(std::move(symbols)) {}

  Word(std::initializer_list<int> symbols) {
    sym_.reserve(symbols.size());
    for (int s : symbols) push_back(s);
  }

  static Word parse(std::string_view text) {
    Word w;
    w.sym_.reserve(text.size());
    for (char c : text) w.sym_.push_back(static_cast<std::uint8_t>(char_to_symbol(c)));
    return w;
  }

  std::size_t size() const noexcept { return sym_.size(); }
  bool empty() const noexcept { return sym_.empty(); }

  int operator[](std::size_t i) const { return sym_[i]; }

  int at(std::size_t i) const {
    if (i >= sym_.size()) fail(Errc::bad_index, "position past end of word");
    return sym_[i];
  }

  void push_back(int s) {
    if (s < 0 || s >= kMaxAlphabet) fail(Errc::bad_symbol, "symbol out of range");
    sym_.push_back(static_cast<std::uint8_t>(s));
  }

  void pop_back() { sym_.pop_back(); }

  Word subword(std::size_t pos, std::size_t len) const {
    if (pos + len > sym_.size()) fail(Errc::bad_index, "subword out of range");
    return Word(std::vector<std::uint8_t>(sym_.begin() + pos, sym_.begin() + pos + len));
  }

  Word reversed() const {
    return Word(std::vector<std::uint8_t>(sym_.rbegin(), sym_.rend()));
  }

  Word operator+(const Word& other) const {
    std::vector<std::uint8_t> out;
    out.reserve(sym_.size() + other.sym_.size());
    out.insert(out.end(), sym_.begin(), sym_.end());
    out.insert(out.end(), other.sym_.begin(), other.sym_.end());
    return Word(std::move(out));
  }

  bool operator==(const Word&) const = default;
  auto operator<=>(const Word&) const = default;  // symbol-wise lexicographic

  std::string str() const {
    std::string s;
    s.reserve(sym_.size());
    for (auto b : sym_) s += symbol_to_char(b);
    return s;
  }

  int max_symbol() const {
    int m = -1;
    for (auto b : sym_) m = std::max<int>(m, b);
    return m;
  }

  const std::vector<std::uint8_t>& data() const noexcept { return sym_; }

 private:
  std::vector<std::uint8_t> sym_;
};

inline std::ostream& operator<<(std::ostream& os, const Word& w) { return os << w.str(); }

struct WordHash {
  std::size_t operator()(const Word& w) const noexcept {
    const auto& v = w.data();
    return std::hash<std::string_view>{}(
        std::string_view(reinterpret_cast<const char*>(v.data()), v.size()));
  }
};

}  // namespace powerfree
