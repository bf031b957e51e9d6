#ifndef PSUB_BITSET_HPP
#define PSUB_BITSET_HPP

#include <bit>
#include <cassert>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

namespace psub
{

/// Fixed-size dynamic bitset used for element sets of a group and for the
/// rows of strict-order matrices.
class Bitset
{
public:
  using Word = std::uint64_t;
  static constexpr std::size_t kWordBits = 64;

  Bitset() = default;

  explicit Bitset(std::size_t size, bool value = false)
  : size_(size), words_((size + kWordBits - 1) / kWordBits, value ? ~Word{0} : 0)
  {
    trim();
  }

  std::size_t size() const { return size_; }
  std::size_t word_count() const { return words_.size(); }
  Word const *data() const { return words_.data(); }

  bool test(std::size_t i) const
  {
    assert(i < size_);
    return (words_[i / kWordBits] >> (i % kWordBits)) & 1u;
  }

  bool operator[](std::size_t i) const { return test(i); }

  void set(std::size_t i)
  {
    assert(i < size_);
    words_[i / kWordBits] |= Word{1} << (i % kWordBits);
  }

  void reset(std::size_t i)
  {
    assert(i < size_);
    words_[i / kWordBits] &= ~(Word{1} << (i % kWordBits));
  }

  void set(std::size_t i, bool value)
  {
    if (value)
      set(i);
    else
      reset(i);
  }

  std::size_t count() const
  {
    std::size_t c = 0;
    for (Word w : words_)
      c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }

  bool any() const
  {
    for (Word w : words_)
      if (w)
        return true;
    return false;
  }

  bool none() const { return !any(); }

  /// Index of the lowest set bit, or size() when empty.
  std::size_t first() const { return next(0); }

  /// Index of the lowest set bit at position >= from, or size().
  std::size_t next(std::size_t from) const
  {
    if (from >= size_)
      return size_;
    std::size_t wi = from / kWordBits;
    Word w = words_[wi] & (~Word{0} << (from % kWordBits));
    for (;;) {
      if (w)
        return wi * kWordBits + static_cast<std::size_t>(std::countr_zero(w));
      if (++wi == words_.size())
        return size_;
      w = words_[wi];
    }
  }

  template<typename F>
  void for_each(F &&f) const
  {
    for (std::size_t wi = 0; wi < words_.size(); ++wi) {
      Word w = words_[wi];
      while (w) {
        f(wi * kWordBits + static_cast<std::size_t>(std::countr_zero(w)));
        w &= w - 1;
      }
    }
  }

  std::vector<std::size_t> indices() const
  {
    std::vector<std::size_t> out;
    out.reserve(count());
    for_each([&](std::size_t i) { out.push_back(i); });
    return out;
  }

  bool is_subset_of(Bitset const &other) const
  {
    assert(size_ == other.size_);
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & ~other.words_[i])
        return false;
    return true;
  }

  bool intersects(Bitset const &other) const
  {
    assert(size_ == other.size_);
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & other.words_[i])
        return true;
    return false;
  }

  /// popcount(*this & other) without materializing the intersection.
  std::size_t intersection_count(Bitset const &other) const
  {
    assert(size_ == other.size_);
    std::size_t c = 0;
    for (std::size_t i = 0; i < words_.size(); ++i)
      c += static_cast<std::size_t>(std::popcount(words_[i] & other.words_[i]));
    return c;
  }

  Bitset &operator&=(Bitset const &o)
  {
    assert(size_ == o.size_);
    for (std::size_t i = 0; i < words_.size(); ++i)
      words_[i] &= o.words_[i];
    return *this;
  }

  Bitset &operator|=(Bitset const &o)
  {
    assert(size_ == o.size_);
    for (std::size_t i = 0; i < words_.size(); ++i)
      words_[i] |= o.words_[i];
    return *this;
  }

  Bitset &operator^=(Bitset const &o)
  {
    assert(size_ == o.size_);
    for (std::size_t i = 0; i < words_.size(); ++i)
      words_[i] ^= o.words_[i];
    return *this;
  }

  /// this &= ~o
  Bitset &subtract(Bitset const &o)
  {
    assert(size_ == o.size_);
    for (std::size_t i = 0; i < words_.size(); ++i)
      words_[i] &= ~o.words_[i];
    return *this;
  }

  friend Bitset operator&(Bitset a, Bitset const &b) { return a &= b; }
  friend Bitset operator|(Bitset a, Bitset const &b) { return a |= b; }
  friend Bitset operator^(Bitset a, Bitset const &b) { return a ^= b; }

  friend bool operator==(Bitset const &a, Bitset const &b)
  {
    return a.size_ == b.size_ && a.words_ == b.words_;
  }

  /// Total order: the set owning the lowest differing index sorts first.
  friend bool operator<(Bitset const &a, Bitset const &b)
  {
    assert(a.size_ == b.size_);
    for (std::size_t i = 0; i < a.words_.size(); ++i) {
      Word diff = a.words_[i] ^ b.words_[i];
      if (diff) {
        Word low = diff & (~diff + 1);
        return (a.words_[i] & low) != 0;
      }
    }
    return false;
  }

  std::size_t hash() const
  {
    std::uint64_t h = 0x9e3779b97f4a7c15ULL ^ size_;
    for (Word w : words_) {
      h ^= w + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return static_cast<std::size_t>(h);
  }

private:
  void trim()
  {
    if (size_ % kWordBits && !words_.empty())
      words_.back() &= (Word{1} << (size_ % kWordBits)) - 1;
  }

  std::size_t size_ = 0;
  std::vector<Word> words_;
};

struct BitsetHash
{
  std::size_t operator()(Bitset const &b) const { return b.hash(); }
};

} // namespace psub

#endif // PSUB_BITSET_HPP
