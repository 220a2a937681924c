#pragma once

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace dissem {

/// Subset of the symbol indices {0, ..., 63}.
class SymbolSet {
 public:
  static constexpr std::size_t kMaxSymbols = 64;

  constexpr SymbolSet() = default;
  constexpr explicit SymbolSet(std::uint64_t bits) : bits_(bits) {}
  SymbolSet(std::initializer_list<std::size_t> items) {
    for (auto i : items) insert(i);
  }
  static SymbolSet full(std::size_t n) {
    return SymbolSet(n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1);
  }

  constexpr std::uint64_t bits() const { return bits_; }
  constexpr bool contains(std::size_t i) const { return i < 64 && ((bits_ >> i) & 1u); }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr std::size_t size() const { return static_cast<std::size_t>(std::popcount(bits_)); }

  void insert(std::size_t i) { bits_ |= std::uint64_t{1} << i; }
  void erase(std::size_t i) { bits_ &= ~(std::uint64_t{1} << i); }

  constexpr SymbolSet operator|(SymbolSet o) const { return SymbolSet(bits_ | o.bits_); }
  constexpr SymbolSet operator&(SymbolSet o) const { return SymbolSet(bits_ & o.bits_); }
  /// Set difference.
  constexpr SymbolSet operator-(SymbolSet o) const { return SymbolSet(bits_ & ~o.bits_); }
  constexpr bool subset_of(SymbolSet o) const { return (bits_ & ~o.bits_) == 0; }
  constexpr bool operator==(const SymbolSet&) const = default;

  std::vector<std::size_t> items() const {
    std::vector<std::size_t> out;
    for (std::uint64_t b = bits_; b; b &= b - 1) out.push_back(static_cast<std::size_t>(std::countr_zero(b)));
    return out;
  }

  /// 1-indexed rendering, e.g. "{1,3}".
  std::string to_string() const {
    std::string s = "{";
    bool first = true;
    for (auto i : items()) {
      if (!first) s += ',';
      s += std::to_string(i + 1);
      first = false;
    }
    return s + "}";
  }

 private:
  std::uint64_t bits_ = 0;
};

}  // namespace dissem
