#include "regfree/word.hpp"

#include <algorithm>
#include <cctype>

#include "regfree/error.hpp"

namespace regfree {

Alphabet::Alphabet(int rank) : rank_(rank) {
  if (rank < 2) throw InputError("alphabet rank must be at least 2, got " + std::to_string(rank));
  if (rank > 26) throw InputError("alphabet rank above 26 has no ASCII spelling");
}

Letter Letter::from_generator(int generator, int sign) {
  if (generator < 1 || (sign != 1 && sign != -1)) throw InputError("invalid letter");
  return Letter(2 * (generator - 1) + (sign < 0 ? 1 : 0));
}

char Letter::to_char() const {
  char base = static_cast<char>('a' + (generator() - 1));
  return sign() < 0 ? static_cast<char>(std::toupper(base)) : base;
}

namespace {

void check_letter(const Alphabet& alphabet, Letter letter) {
  if (letter.code() < 0 || letter.code() >= alphabet.letter_count()) {
    throw InputError("letter code " + std::to_string(letter.code()) + " outside alphabet of rank " +
                     std::to_string(alphabet.rank()));
  }
}

}  // namespace

Word Word::reduce(const Alphabet& alphabet, std::span<const Letter> letters) {
  Word w(alphabet);
  for (Letter l : letters) {
    check_letter(alphabet, l);
    if (!w.letters_.empty() && w.letters_.back() == l.inverse()) {
      w.letters_.pop_back();
    } else {
      w.letters_.push_back(l);
    }
  }
  return w;
}

Word Word::from_reduced(const Alphabet& alphabet, std::span<const Letter> letters) {
  Word w(alphabet);
  for (Letter l : letters) {
    check_letter(alphabet, l);
    w.push_back(l);
  }
  return w;
}

Word Word::parse(const Alphabet& alphabet, std::string_view text, bool reduce) {
  if (text == "1") return Word(alphabet);
  if (text.empty()) throw ParseError("empty word (the identity is spelled \"1\")", 0);
  std::vector<Letter> letters;
  letters.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (!std::isalpha(static_cast<unsigned char>(c))) {
      throw ParseError(std::string("invalid character '") + c + "' in word", i);
    }
    int generator = std::tolower(static_cast<unsigned char>(c)) - 'a' + 1;
    if (generator > alphabet.rank()) {
      throw ParseError(std::string("letter '") + c + "' outside alphabet of rank " +
                           std::to_string(alphabet.rank()),
                       i);
    }
    Letter l = Letter::from_generator(generator, std::isupper(static_cast<unsigned char>(c)) ? -1 : 1);
    if (!reduce && !letters.empty() && letters.back() == l.inverse()) {
      throw ParseError("word is not freely reduced", i);
    }
    letters.push_back(l);
  }
  return Word::reduce(alphabet, letters);
}

Word Word::inverse() const {
  Word w(alphabet());
  w.letters_.reserve(letters_.size());
  for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) w.letters_.push_back(it->inverse());
  return w;
}

Word Word::prefix(std::size_t length) const {
  Word w(alphabet());
  w.letters_.assign(letters_.begin(), letters_.begin() + static_cast<std::ptrdiff_t>(std::min(length, size())));
  return w;
}

Word Word::suffix_from(std::size_t offset) const {
  Word w(alphabet());
  if (offset < size()) w.letters_.assign(letters_.begin() + static_cast<std::ptrdiff_t>(offset), letters_.end());
  return w;
}

void Word::push_back(Letter letter) {
  if (letter.code() < 0 || letter.code() >= 2 * rank_) throw InputError("letter outside alphabet");
  if (!letters_.empty() && letters_.back() == letter.inverse()) {
    throw InputError("appending " + std::string(1, letter.to_char()) + " to " + to_string() +
                     " cancels");
  }
  letters_.push_back(letter);
}

std::string Word::to_string() const {
  if (letters_.empty()) return "1";
  std::string s;
  s.reserve(letters_.size());
  for (Letter l : letters_) s.push_back(l.to_char());
  return s;
}

std::strong_ordering operator<=>(const Word& a, const Word& b) {
  if (auto c = a.size() <=> b.size(); c != 0) return c;
  return a.letters_ <=> b.letters_;
}

Word multiply(const Word& u, const Word& v) {
  if (u.alphabet() != v.alphabet()) throw InputError("alphabet mismatch in product");
  std::size_t c = cancellation(u, v);
  std::vector<Letter> letters(u.begin(), u.end() - static_cast<std::ptrdiff_t>(c));
  letters.insert(letters.end(), v.begin() + static_cast<std::ptrdiff_t>(c), v.end());
  return Word::from_reduced(u.alphabet(), letters);
}

std::size_t cancellation(const Word& u, const Word& v) {
  if (u.alphabet() != v.alphabet()) throw InputError("alphabet mismatch in product");
  std::size_t c = 0;
  while (c < u.size() && c < v.size() && u[u.size() - 1 - c] == v[c].inverse()) ++c;
  return c;
}

bool concatenates_freely(const Word& u, const Word& v) {
  return u.empty() || v.empty() || u.back() != v.front().inverse();
}

Integer sphere_size(std::size_t k, const Alphabet& alphabet) {
  if (k == 0) return 1;
  return Integer(alphabet.letter_count()) * pow(Integer(alphabet.letter_count() - 1), k - 1);
}

SphereEnumerator::SphereEnumerator(const Alphabet& alphabet, std::size_t k)
    : alphabet_(alphabet), length_(k), codes_(k, -1), current_(alphabet) {}

bool SphereEnumerator::advance_from(std::size_t position) {
  // Increment codes_[position], then fill the tail with minimal admissible codes.
  std::size_t pos = position;
  for (;;) {
    int forbidden = pos == 0 ? -1 : (codes_[pos - 1] ^ 1);
    int c = codes_[pos] + 1;
    if (c == forbidden) ++c;
    if (c < alphabet_.letter_count()) {
      codes_[pos] = c;
      break;
    }
    if (pos == 0) return false;
    codes_[pos] = -1;
    --pos;
  }
  for (std::size_t i = pos + 1; i < length_; ++i) {
    int c = 0;
    if (c == (codes_[i - 1] ^ 1)) ++c;
    codes_[i] = c;
  }
  return true;
}

bool SphereEnumerator::next() {
  if (done_) return false;
  if (!started_) {
    started_ = true;
    if (length_ == 0) {
      current_ = Word(alphabet_);
      return true;
    }
    if (!advance_from(0)) return done_ = false;
  } else if (length_ == 0 || !advance_from(length_ - 1)) {
    done_ = true;
    return false;
  }
  std::vector<Letter> letters;
  letters.reserve(length_);
  for (int c : codes_) letters.emplace_back(c);
  current_ = Word::from_reduced(alphabet_, letters);
  return true;
}

void for_each_in_sphere(const Alphabet& alphabet, std::size_t k,
                        const std::function<void(const Word&)>& visit) {
  SphereEnumerator e(alphabet, k);
  while (e.next()) visit(e.current());
}

void for_each_in_ball(const Alphabet& alphabet, std::size_t radius,
                      const std::function<void(const Word&)>& visit) {
  for (std::size_t k = 0; k <= radius; ++k) for_each_in_sphere(alphabet, k, visit);
}

}  // namespace regfree
