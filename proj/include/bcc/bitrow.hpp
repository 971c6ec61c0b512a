#pragma once

#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace bcc {

// Fixed-width bitset used for adjacency rows and live-node masks. Set algebra
// (intersection, difference, union) and popcounts are the inner loop of every
// algorithm here, so the representation is a plain word vector with the
// trailing padding bits kept at zero as an invariant.
class BitRow {
 public:
  BitRow() : nbits_(0) {}
  explicit BitRow(std::size_t nbits)
      : nbits_(nbits), words_((nbits + 63) / 64, 0) {}

  static BitRow full(std::size_t nbits) {
    BitRow r(nbits);
    r.set_all();
    return r;
  }

  std::size_t size() const { return nbits_; }

  bool test(std::size_t i) const {
    return (words_[i >> 6] >> (i & 63)) & 1u;
  }
  void set(std::size_t i) { words_[i >> 6] |= std::uint64_t(1) << (i & 63); }
  void reset(std::size_t i) {
    words_[i >> 6] &= ~(std::uint64_t(1) << (i & 63));
  }

  void set_all() {
    for (auto& w : words_) w = ~std::uint64_t(0);
    clear_padding();
  }
  void reset_all() {
    for (auto& w : words_) w = 0;
  }

  std::size_t count() const {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }
  bool any() const {
    for (auto w : words_)
      if (w) return true;
    return false;
  }
  bool none() const { return !any(); }

  BitRow& operator&=(const BitRow& o) {
    for (std::size_t k = 0; k < words_.size(); ++k) words_[k] &= o.words_[k];
    return *this;
  }
  BitRow& operator|=(const BitRow& o) {
    for (std::size_t k = 0; k < words_.size(); ++k) words_[k] |= o.words_[k];
    return *this;
  }
  BitRow& operator^=(const BitRow& o) {
    for (std::size_t k = 0; k < words_.size(); ++k) words_[k] ^= o.words_[k];
    return *this;
  }
  // this &= ~o
  BitRow& and_not(const BitRow& o) {
    for (std::size_t k = 0; k < words_.size(); ++k) words_[k] &= ~o.words_[k];
    return *this;
  }

  friend BitRow operator&(BitRow a, const BitRow& b) { return a &= b; }
  friend BitRow operator|(BitRow a, const BitRow& b) { return a |= b; }
  friend BitRow operator^(BitRow a, const BitRow& b) { return a ^= b; }
  friend BitRow and_not(BitRow a, const BitRow& b) { return a.and_not(b); }

  std::size_t count_and(const BitRow& o) const {
    std::size_t c = 0;
    for (std::size_t k = 0; k < words_.size(); ++k)
      c += static_cast<std::size_t>(std::popcount(words_[k] & o.words_[k]));
    return c;
  }
  std::size_t count_and_not(const BitRow& o) const {
    std::size_t c = 0;
    for (std::size_t k = 0; k < words_.size(); ++k)
      c += static_cast<std::size_t>(std::popcount(words_[k] & ~o.words_[k]));
    return c;
  }

  template <typename F>
  void for_each_set(F&& f) const {
    for (std::size_t k = 0; k < words_.size(); ++k) {
      std::uint64_t w = words_[k];
      while (w) {
        unsigned b = static_cast<unsigned>(std::countr_zero(w));
        f(k * 64 + b);
        w &= w - 1;
      }
    }
  }

  // First word of the bit pattern; enough to identify sets of up to 64 bits.
  std::uint64_t low64() const { return words_.empty() ? 0 : words_[0]; }

  std::vector<std::uint32_t> to_indices() const {
    std::vector<std::uint32_t> out;
    out.reserve(count());
    for_each_set([&](std::size_t i) { out.push_back(static_cast<std::uint32_t>(i)); });
    return out;
  }

  bool operator==(const BitRow&) const = default;
  auto operator<=>(const BitRow&) const = default;

 private:
  void clear_padding() {
    if (nbits_ & 63) words_.back() &= (~std::uint64_t(0)) >> (64 - (nbits_ & 63));
    if (nbits_ == 0 && !words_.empty()) words_.back() = 0;
  }

  std::size_t nbits_;
  std::vector<std::uint64_t> words_;
};

}  // namespace bcc
