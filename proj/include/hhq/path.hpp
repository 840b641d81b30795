#pragma once

#include <compare>
#include <stdexcept>
#include <string>
#include <vector>

namespace hhq {

inline int imod(int a, int m) {
  int r = a % m;
  return r < 0 ? r + m : r;
}

// Step directions around the cycle: A is the clockwise arrow a_v (v -> v+1),
// B the counterclockwise arrow abar_{v-1} (v -> v-1).
enum class Dir : unsigned char { A = 0, B = 1 };

inline Dir flip(Dir d) { return d == Dir::A ? Dir::B : Dir::A; }

// A path of the quiver: source vertex plus a word of steps, composed left to
// right.  Paths are plain quiver words (elements of the path algebra kQ);
// reduction modulo the relations lives in Algebra.
class Path {
 public:
  Path() : m_(1), src_(0) {}
  Path(int m, int src, std::vector<Dir> word = {})
      : m_(m), src_(imod(src, m)), word_(std::move(word)) {}

  static Path vertex(int m, int i) { return Path(m, i); }
  static Path arrow(int m, int i) { return Path(m, i, {Dir::A}); }
  static Path arrow_bar(int m, int i) { return Path(m, i + 1, {Dir::B}); }

  // Alternating word of the given length starting with `lead`.
  static std::vector<Dir> alt_word(Dir lead, int len) {
    std::vector<Dir> w(len);
    for (int k = 0; k < len; ++k) w[k] = (k % 2 == 0) ? lead : flip(lead);
    return w;
  }

  int m() const { return m_; }
  int source() const { return src_; }
  int length() const { return int(word_.size()); }
  Dir step(int k) const { return word_[k]; }
  const std::vector<Dir>& word() const { return word_; }

  int d() const {  // number of clockwise steps
    int n = 0;
    for (Dir s : word_) n += (s == Dir::A);
    return n;
  }
  int dbar() const { return -(length() - d()); }  // minus counterclockwise steps

  int vertex_at(int k) const {  // vertex reached after k steps
    int v = src_;
    for (int j = 0; j < k; ++j) v += (word_[j] == Dir::A) ? 1 : -1;
    return imod(v, m_);
  }
  int target() const { return vertex_at(length()); }

  // Index of the arrow used at step k: a_v for A at vertex v, abar_{v-1} for B.
  int arrow_index(int k) const {
    int v = vertex_at(k);
    return word_[k] == Dir::A ? v : imod(v - 1, m_);
  }

  bool alternating() const {
    for (size_t k = 1; k < word_.size(); ++k)
      if (word_[k] == word_[k - 1]) return false;
    return true;
  }

  Path concat(const Path& q) const {
    if (m_ != q.m_ || target() != q.src_)
      throw std::logic_error("Path::concat: endpoints do not match");
    std::vector<Dir> w = word_;
    w.insert(w.end(), q.word_.begin(), q.word_.end());
    return Path(m_, src_, std::move(w));
  }

  Path subpath(int from, int len) const {
    return Path(m_, vertex_at(from),
                std::vector<Dir>(word_.begin() + from, word_.begin() + from + len));
  }

  Path rotated(int shift) const { return Path(m_, src_ + shift, word_); }

  std::string word_str() const {
    std::string s;
    for (Dir d : word_) s += (d == Dir::A ? 'a' : 'b');
    return s;
  }

  friend auto operator<=>(const Path& x, const Path& y) {
    if (auto c = x.m_ <=> y.m_; c != 0) return c;
    if (auto c = x.src_ <=> y.src_; c != 0) return c;
    if (auto c = x.word_.size() <=> y.word_.size(); c != 0) return c;
    return x.word_ <=> y.word_;
  }
  friend bool operator==(const Path& x, const Path& y) = default;

 private:
  int m_, src_;
  std::vector<Dir> word_;
};

}  // namespace hhq
