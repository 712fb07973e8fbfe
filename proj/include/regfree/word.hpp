#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "regfree/exact.hpp"

namespace regfree {

// Basis x_1..x_m of a free group of finite rank m >= 2.
class Alphabet {
 public:
  explicit Alphabet(int rank);

  int rank() const { return rank_; }
  // Number of letters in X ∪ X⁻¹.
  int letter_count() const { return 2 * rank_; }

  friend bool operator==(const Alphabet&, const Alphabet&) = default;

 private:
  int rank_;
};

// A letter x_i^{±1}, encoded as 2(i-1) for x_i and 2(i-1)+1 for x_i⁻¹. The code
// order x1, x1⁻¹, x2, x2⁻¹, ... is the canonical exploration order everywhere.
class Letter {
 public:
  constexpr Letter() = default;
  constexpr explicit Letter(int code) : code_(code) {}
  static Letter from_generator(int generator, int sign);

  constexpr int code() const { return code_; }
  constexpr int generator() const { return code_ / 2 + 1; }
  constexpr int sign() const { return (code_ & 1) ? -1 : 1; }
  constexpr Letter inverse() const { return Letter(code_ ^ 1); }
  char to_char() const;

  friend constexpr auto operator<=>(Letter, Letter) = default;

 private:
  int code_ = 0;
};

// A freely reduced word; the empty word is the identity.
class Word {
 public:
  explicit Word(const Alphabet& alphabet) : rank_(alphabet.rank()) {}

  // Freely reduces `letters`. Throws InputError on a letter outside the alphabet.
  static Word reduce(const Alphabet& alphabet, std::span<const Letter> letters);
  // Throws InputError if `letters` is not freely reduced.
  static Word from_reduced(const Alphabet& alphabet, std::span<const Letter> letters);
  // ASCII syntax: generator i is the i-th lowercase letter, its inverse the
  // uppercase one, "1" is the identity. Unreduced text is rejected unless
  // `reduce` is set.
  static Word parse(const Alphabet& alphabet, std::string_view text, bool reduce = false);

  Alphabet alphabet() const { return Alphabet(rank_); }
  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  Letter operator[](std::size_t i) const { return letters_[i]; }
  Letter front() const { return letters_.front(); }
  Letter back() const { return letters_.back(); }
  const std::vector<Letter>& letters() const { return letters_; }
  auto begin() const { return letters_.begin(); }
  auto end() const { return letters_.end(); }

  Word inverse() const;
  Word prefix(std::size_t length) const;
  Word suffix_from(std::size_t offset) const;
  // Appends a letter that does not cancel; throws InputError otherwise.
  void push_back(Letter letter);
  void pop_back() { letters_.pop_back(); }

  std::string to_string() const;

  friend bool operator==(const Word&, const Word&) = default;
  // Shortlex order: shorter first, then by letter codes.
  friend std::strong_ordering operator<=>(const Word& a, const Word& b);

 private:
  int rank_;
  std::vector<Letter> letters_;
};

// Freely reduced product uv. Throws InputError on rank mismatch.
Word multiply(const Word& u, const Word& v);
// c(u, v) = (|u| + |v| - |uv|) / 2.
std::size_t cancellation(const Word& u, const Word& v);
// True iff uv has no cancellation, i.e. uv = u ∘ v.
bool concatenates_freely(const Word& u, const Word& v);

// |S_k| = 1 for k = 0, otherwise 2m(2m-1)^{k-1}.
Integer sphere_size(std::size_t k, const Alphabet& alphabet);

// Streams the reduced words of length exactly k in lexicographic letter-code
// order without materializing the sphere. Visitor returns false to stop.
class SphereEnumerator {
 public:
  SphereEnumerator(const Alphabet& alphabet, std::size_t k);
  // Advances to the next word; false when exhausted.
  bool next();
  const Word& current() const { return current_; }

 private:
  bool advance_from(std::size_t position);
  Alphabet alphabet_;
  std::size_t length_;
  bool started_ = false;
  bool done_ = false;
  std::vector<int> codes_;
  Word current_;
};

void for_each_in_sphere(const Alphabet& alphabet, std::size_t k,
                        const std::function<void(const Word&)>& visit);
void for_each_in_ball(const Alphabet& alphabet, std::size_t radius,
                      const std::function<void(const Word&)>& visit);

}  // namespace regfree

template <>
struct std::hash<regfree::Word> {
  std::size_t operator()(const regfree::Word& w) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (auto l : w) h = (h ^ static_cast<std::size_t>(l.code() + 1)) * 1099511628211ull;
    return h;
  }
};
