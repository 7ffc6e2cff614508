#pragma once

#include <cstdint>
#include <functional>
#include <mutex>
#include <string>
#include <unordered_map>
#include <vector>

namespace ncchain {

// Letters are interned strings.  Equality and hashing work on the id;
// the canonical order is the name order, so reports come out the same
// no matter in which order letters were first seen.
class Letter {
 public:
  Letter() : id_(0) {}
  explicit Letter(const std::string& name) : id_(intern(name)) {}

  const std::string& name() const { return table()[id_]; }
  std::uint32_t id() const { return id_; }

  bool operator==(const Letter& o) const { return id_ == o.id_; }
  bool operator!=(const Letter& o) const { return id_ != o.id_; }
  bool operator<(const Letter& o) const {
    return id_ != o.id_ && name() < o.name();
  }

 private:
  static std::vector<std::string>& table() {
    static std::vector<std::string> t{""};
    return t;
  }
  static std::uint32_t intern(const std::string& name) {
    static std::unordered_map<std::string, std::uint32_t> index{{"", 0}};
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = index.find(name);
    if (it != index.end()) return it->second;
    std::uint32_t id = static_cast<std::uint32_t>(table().size());
    table().push_back(name);
    index.emplace(name, id);
    return id;
  }

  std::uint32_t id_;
};

using Word = std::vector<Letter>;

inline Word concat(const Word& a, const Word& b) {
  Word r = a;
  r.insert(r.end(), b.begin(), b.end());
  return r;
}

// (length, lexicographic by letter name): the canonical emission order.
inline bool word_less(const Word& a, const Word& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) return a[i] < b[i];
  return false;
}

inline std::string word_str(const Word& w) {
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) s += ' ';
    s += w[i].name();
  }
  return s.empty() ? "(empty)" : s;
}

struct WordHash {
  std::size_t operator()(const Word& w) const {
    std::size_t h = 216613626u;
    for (const Letter& l : w)
      h ^= l.id() + 0x9e3779b9u + (h << 6) + (h >> 2);
    return h;
  }
};

struct WordPairHash {
  std::size_t operator()(const std::pair<Word, Word>& p) const {
    WordHash wh;
    return wh(p.first) * 1000003u ^ wh(p.second);
  }
};

}  // namespace ncchain
