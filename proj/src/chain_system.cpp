#include "ncchain/chain_system.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace ncchain {

namespace {

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

std::vector<Word> all_prefixes(const ChainSystem& c) {
  std::unordered_set<Word, WordHash> seen;
  std::vector<Word> out;
  for (const Word& w : c.words()) {
    for (std::size_t i = 0; i <= w.size(); ++i) {
      Word p(w.begin(), w.begin() + i);
      if (seen.insert(p).second) out.push_back(std::move(p));
    }
  }
  std::sort(out.begin(), out.end(), word_less);
  return out;
}

std::vector<Word> all_postfixes(const ChainSystem& c) {
  std::unordered_set<Word, WordHash> seen;
  std::vector<Word> out;
  for (const Word& w : c.words()) {
    for (std::size_t i = 0; i <= w.size(); ++i) {
      Word p(w.begin() + i, w.end());
      if (seen.insert(p).second) out.push_back(std::move(p));
    }
  }
  std::sort(out.begin(), out.end(), word_less);
  return out;
}

// Classes of the transitive closure of "share a completion".  The raw
// relation from the definition need not be transitive on arbitrary word
// sets; closure keeps this total, and the convexity check below reports
// when the closure added anything the definition would not.
std::vector<std::vector<Word>> closure_classes(const std::vector<Word>& affixes,
                                               const ChainSystem& c,
                                               bool prefix_side) {
  std::unordered_map<Word, std::size_t, WordHash> index;
  for (std::size_t i = 0; i < affixes.size(); ++i) index.emplace(affixes[i], i);
  std::unordered_map<Word, std::vector<std::size_t>, WordHash> by_completion;
  for (const Word& w : c.words()) {
    for (std::size_t i = 0; i <= w.size(); ++i) {
      Word p(w.begin(), w.begin() + i);
      Word x(w.begin() + i, w.end());
      if (prefix_side)
        by_completion[x].push_back(index.at(p));
      else
        by_completion[p].push_back(index.at(x));
    }
  }
  UnionFind uf(affixes.size());
  for (const auto& [completion, members] : by_completion)
    for (std::size_t i = 1; i < members.size(); ++i)
      uf.unite(members[0], members[i]);
  std::unordered_map<std::size_t, std::vector<Word>> groups;
  for (std::size_t i = 0; i < affixes.size(); ++i)
    groups[uf.find(i)].push_back(affixes[i]);
  std::vector<std::vector<Word>> classes;
  for (auto& [root, members] : groups) {
    std::sort(members.begin(), members.end(), word_less);
    classes.push_back(std::move(members));
  }
  std::sort(classes.begin(), classes.end(),
            [](const auto& a, const auto& b) { return word_less(a[0], b[0]); });
  return classes;
}

// Condition (ii): whenever some p in P and x in X concatenate into c,
// every pair from P x X must.  Returns a witness or empty string.
std::string convexity_witness(const ChainSystem& c,
                              const std::vector<std::vector<Word>>& pre_classes,
                              const std::vector<std::vector<Word>>& post_classes) {
  std::unordered_map<Word, std::size_t, WordHash> pre_idx, post_idx;
  for (std::size_t i = 0; i < pre_classes.size(); ++i)
    for (const Word& w : pre_classes[i]) pre_idx.emplace(w, i);
  for (std::size_t i = 0; i < post_classes.size(); ++i)
    for (const Word& w : post_classes[i]) post_idx.emplace(w, i);
  std::set<std::pair<std::size_t, std::size_t>> incident;
  for (const Word& w : c.words()) {
    for (std::size_t i = 0; i <= w.size(); ++i) {
      Word p(w.begin(), w.begin() + i);
      Word x(w.begin() + i, w.end());
      incident.insert({pre_idx.at(p), post_idx.at(x)});
    }
  }
  for (const auto& [pi, xi] : incident) {
    for (const Word& p : pre_classes[pi]) {
      for (const Word& x : post_classes[xi]) {
        if (!c.contains(concat(p, x)))
          return "classes of '" + word_str(p) + "' and '" + word_str(x) +
                 "' meet c but '" + word_str(concat(p, x)) + "' is missing";
      }
    }
  }
  return "";
}

}  // namespace

ChainSystem ChainSystem::from_words(std::vector<Word> words) {
  std::sort(words.begin(), words.end(), word_less);
  words.erase(std::unique(words.begin(), words.end()), words.end());
  ChainSystem c;
  c.words_ = std::move(words);
  std::set<Letter> alpha;
  for (const Word& w : c.words_)
    for (const Letter& l : w) alpha.insert(l);
  c.alphabet_.assign(alpha.begin(), alpha.end());
  c.word_set_.insert(c.words_.begin(), c.words_.end());
  return c;
}

AxiomReport check_axioms(const ChainSystem& c) {
  AxiomReport rep;
  if (c.empty()) {
    rep.degenerate = true;
    return rep;
  }
  rep.finite_bound = true;
  for (const Word& w : c.words())
    rep.max_word_length = std::max(rep.max_word_length, w.size());

  auto pre = closure_classes(all_prefixes(c), c, true);
  auto post = closure_classes(all_postfixes(c), c, false);
  rep.witness_convexity = convexity_witness(c, pre, post);
  rep.convexity = rep.witness_convexity.empty();

  // Conditions (iii) and the no-proper-extension consequence both reduce
  // to looking at the sets of middles per (prefix, postfix) pair.
  std::unordered_map<std::pair<Word, Word>, std::vector<Word>, WordPairHash> middles;
  for (const Word& w : c.words()) {
    for (std::size_t i = 0; i <= w.size(); ++i) {
      for (std::size_t j = i; j <= w.size(); ++j) {
        Word p(w.begin(), w.begin() + i);
        Word mid(w.begin() + i, w.begin() + j);
        Word x(w.begin() + j, w.end());
        middles[{p, x}].push_back(mid);
      }
    }
  }
  rep.no_substitution = true;
  rep.no_proper_extension = true;
  for (auto& [key, mids] : middles) {
    std::sort(mids.begin(), mids.end(), word_less);
    mids.erase(std::unique(mids.begin(), mids.end()), mids.end());
    if (mids.size() < 2) continue;
    bool has_single = !mids.empty() && mids[0].size() <= 1 && !mids[0].empty();
    for (const Word& m : mids)
      if (m.size() == 1) has_single = true;
    if (rep.no_substitution && has_single) {
      rep.no_substitution = false;
      rep.witness_no_substitution =
          "p='" + word_str(key.first) + "', x='" + word_str(key.second) +
          "' admit middles '" + word_str(mids[0]) + "' and '" + word_str(mids[1]) + "'";
    }
    if (rep.no_proper_extension && mids[0].empty()) {
      rep.no_proper_extension = false;
      rep.witness_no_proper_extension =
          "both '" + word_str(concat(key.first, key.second)) + "' and a proper extension with middle '" +
          word_str(mids[1]) + "' are words";
    }
  }
  return rep;
}

namespace {

AffixClasses make_affix_classes(const ChainSystem& c, bool prefix_side) {
  if (c.empty()) throw std::invalid_argument("degenerate: empty system");
  auto affixes = prefix_side ? all_prefixes(c) : all_postfixes(c);
  auto pre = closure_classes(all_prefixes(c), c, true);
  auto post = closure_classes(all_postfixes(c), c, false);
  std::string w = convexity_witness(c, pre, post);
  if (!w.empty())
    throw std::invalid_argument("prefix/postfix classes ill-defined: " + w);
  AffixClasses out;
  auto& classes = prefix_side ? pre : post;
  out.classes_ = std::move(classes);
  for (std::size_t i = 0; i < out.classes_.size(); ++i)
    for (const Word& word : out.classes_[i]) out.index_.emplace(word, i);
  return out;
}

}  // namespace

AffixClasses affix_classes_impl(const ChainSystem& c, bool prefix_side) {
  return make_affix_classes(c, prefix_side);
}

std::size_t AffixClasses::class_of(const Word& affix) const {
  auto it = index_.find(affix);
  if (it == index_.end()) throw std::invalid_argument("not an affix: " + word_str(affix));
  return it->second;
}

AffixClasses prefix_classes(const ChainSystem& c) {
  return make_affix_classes(c, true);
}

AffixClasses postfix_classes(const ChainSystem& c) {
  return make_affix_classes(c, false);
}

LabeledPoset build_poset(const ChainSystem& c) {
  AxiomReport rep = check_axioms(c);
  if (!rep.pass())
    throw std::invalid_argument("not a chain system; poset undefined");
  AffixClasses pre = prefix_classes(c);
  const std::size_t n = pre.size();

  // direct comparabilities p prefix-of q, then transitive closure
  std::vector<std::vector<char>> le(n, std::vector<char>(n, 0));
  for (std::size_t i = 0; i < n; ++i) le[i][i] = 1;
  for (const auto& cls : pre.classes()) {
    for (const Word& q : cls) {
      std::size_t cq = pre.class_of(q);
      for (std::size_t i = 0; i < q.size(); ++i) {
        Word p(q.begin(), q.begin() + i);
        le[pre.class_of(p)][cq] = 1;
      }
    }
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (le[i][k])
        for (std::size_t j = 0; j < n; ++j)
          if (le[k][j]) le[i][j] = 1;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (le[i][j] && le[j][i])
        throw std::runtime_error("prefix order not antisymmetric");

  std::vector<Cover> covers;
  std::unordered_map<Word, std::size_t, WordHash> prefix_to_class;
  for (std::size_t i = 0; i < n; ++i)
    for (const Word& w : pre.classes()[i]) prefix_to_class.emplace(w, i);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (a == b || !le[a][b]) continue;
      bool cover = true;
      for (std::size_t mid = 0; mid < n && cover; ++mid)
        if (mid != a && mid != b && le[a][mid] && le[mid][b]) cover = false;
      if (!cover) continue;
      // unique letter for the cover, independent of the representative
      std::optional<Letter> lab;
      for (const Word& p : pre.classes()[a]) {
        std::optional<Letter> mine;
        for (const Letter& l : c.alphabet()) {
          Word pa = p;
          pa.push_back(l);
          auto it = prefix_to_class.find(pa);
          if (it != prefix_to_class.end() && it->second == b) {
            if (mine)
              throw std::runtime_error("cover label not unique under " + word_str(p));
            mine = l;
          }
        }
        if (!mine)
          throw std::runtime_error("cover unreachable by one letter from " + word_str(p));
        if (lab && !(*lab == *mine))
          throw std::runtime_error("cover label depends on representative");
        lab = mine;
      }
      covers.push_back({a, b, *lab});
    }
  }
  std::vector<std::string> names(n);
  for (std::size_t i = 0; i < n; ++i) names[i] = word_str(pre.representative(i));
  return LabeledPoset(std::move(names), std::move(covers));
}

ChainSystem poset_to_chain_system(const LabeledPoset& p) {
  auto chains = p.maximal_chains();
  if (chains.empty()) throw std::invalid_argument("poset has no chains");
  std::vector<Word> words(chains.size());
  for (std::size_t i = 0; i < chains.size(); ++i)
    for (std::size_t j = 0; j + 1 < chains[i].size(); ++j)
      words[i].push_back(p.label(chains[i][j], chains[i][j + 1]));

  auto chain_name = [&](std::size_t i) {
    std::string s;
    for (std::size_t v : chains[i]) s += (s.empty() ? "" : " < ") + p.name(v);
    return s;
  };
  // condition (i): same labels from the bottom force the same element
  for (std::size_t a = 0; a < chains.size(); ++a) {
    for (std::size_t b = a + 1; b < chains.size(); ++b) {
      std::size_t upto = std::min(words[a].size(), words[b].size());
      for (std::size_t i = 0; i <= upto; ++i) {
        if (i > 0 && !(words[a][i - 1] == words[b][i - 1])) break;
        if (chains[a][i] != chains[b][i])
          throw std::invalid_argument(
              "label-from-bottom condition fails:\n  " + chain_name(a) + "\n  " +
              chain_name(b));
      }
      // condition (ii): dual, from the top
      for (std::size_t i = 0; i <= upto; ++i) {
        if (i > 0 &&
            !(words[a][words[a].size() - i] == words[b][words[b].size() - i]))
          break;
        if (chains[a][chains[a].size() - 1 - i] != chains[b][chains[b].size() - 1 - i])
          throw std::invalid_argument(
              "label-from-top condition fails:\n  " + chain_name(a) + "\n  " +
              chain_name(b));
      }
    }
  }
  return ChainSystem::from_words(std::move(words));
}

ChainSystem maximal_b_sequences(const BinaryRelation& b,
                                const std::vector<Letter>& alphabet) {
  std::vector<Letter> alpha = alphabet;
  std::sort(alpha.begin(), alpha.end());
  alpha.erase(std::unique(alpha.begin(), alpha.end()), alpha.end());
  for (const auto& [x, y] : b.pairs) {
    if (!std::binary_search(alpha.begin(), alpha.end(), x) ||
        !std::binary_search(alpha.begin(), alpha.end(), y))
      throw std::invalid_argument("relation letter outside alphabet");
  }

  std::vector<Word> out;
  Word cur;
  auto is_maximal = [&]() {
    for (std::size_t pos = 0; pos <= cur.size(); ++pos) {
      for (const Letter& a : alpha) {
        bool ok = true;
        for (std::size_t i = 0; i < pos && ok; ++i)
          if (!b.contains(cur[i], a)) ok = false;
        for (std::size_t i = pos; i < cur.size() && ok; ++i)
          if (!b.contains(a, cur[i])) ok = false;
        if (ok) return false;
      }
    }
    return true;
  };
  std::function<void()> dfs = [&]() {
    if (is_maximal()) out.push_back(cur);
    for (const Letter& a : alpha) {
      bool ok = true;
      for (const Letter& x : cur)
        if (!b.contains(x, a)) {
          ok = false;
          break;
        }
      if (!ok) continue;
      cur.push_back(a);
      dfs();
      cur.pop_back();
    }
  };
  dfs();
  return ChainSystem::from_words(std::move(out));
}

ChainSystem shuffle(const ChainSystem& a, const ChainSystem& b) {
  {
    std::set<Letter> sa(a.alphabet().begin(), a.alphabet().end());
    for (const Letter& l : b.alphabet())
      if (sa.count(l))
        throw std::invalid_argument("shuffle requires disjoint alphabets; shared " +
                                    l.name());
  }
  std::vector<Word> out;
  Word cur;
  std::function<void(const Word&, std::size_t, const Word&, std::size_t)> merge =
      [&](const Word& x, std::size_t i, const Word& y, std::size_t j) {
        if (i == x.size() && j == y.size()) {
          out.push_back(cur);
          return;
        }
        if (i < x.size()) {
          cur.push_back(x[i]);
          merge(x, i + 1, y, j);
          cur.pop_back();
        }
        if (j < y.size()) {
          cur.push_back(y[j]);
          merge(x, i, y, j + 1);
          cur.pop_back();
        }
      };
  for (const Word& x : a.words())
    for (const Word& y : b.words()) merge(x, 0, y, 0);
  return ChainSystem::from_words(std::move(out));
}

bool is_isomorphism(const ChainSystem& a, const ChainSystem& b,
                    const std::map<Letter, Letter>& letter_map) {
  if (letter_map.size() != a.alphabet().size())
    throw std::invalid_argument("letter map must cover the source alphabet");
  std::set<Letter> image;
  for (const Letter& l : a.alphabet()) {
    auto it = letter_map.find(l);
    if (it == letter_map.end())
      throw std::invalid_argument("letter map misses " + l.name());
    if (!image.insert(it->second).second)
      throw std::invalid_argument("letter map not injective");
  }
  {
    std::set<Letter> tgt(b.alphabet().begin(), b.alphabet().end());
    if (image != tgt) return false;
  }
  if (a.size() != b.size()) return false;
  for (const Word& w : a.words()) {
    Word img;
    img.reserve(w.size());
    for (const Letter& l : w) img.push_back(letter_map.at(l));
    if (!b.contains(img)) return false;
  }
  return true;
}

bool is_balanced(const ChainSystem& c) {
  auto pre = all_prefixes(c);
  auto post = all_postfixes(c);
  return pre == post;  // both sorted canonically
}

ChainSystem restriction(const ChainSystem& c, std::size_t x, std::size_t y) {
  LabeledPoset p = build_poset(c);
  if (x >= p.size() || y >= p.size() || !p.leq(x, y))
    throw std::invalid_argument("restriction requires x <= y in the poset");
  return ChainSystem::from_words(p.interval_words(x, y));
}

namespace {

// canonical id per interval word-set, plus word -> id incidence
struct IntervalTable {
  std::vector<std::vector<std::size_t>> interval_class;  // [a][b] or npos
  std::vector<std::vector<Word>> class_words;
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  IntervalTable(const LabeledPoset& p) {
    std::map<std::vector<Word>, std::size_t> ids;
    interval_class.assign(p.size(), std::vector<std::size_t>(p.size(), npos));
    for (std::size_t a = 0; a < p.size(); ++a) {
      for (std::size_t b = 0; b < p.size(); ++b) {
        if (!p.leq(a, b)) continue;
        auto words = p.interval_words(a, b);
        auto [it, fresh] = ids.emplace(words, ids.size());
        interval_class[a][b] = it->second;
        if (fresh) class_words.push_back(it->first);
      }
    }
  }
};

}  // namespace

bool has_restriction_property(const ChainSystem& c, std::string* witness) {
  LabeledPoset p = build_poset(c);
  IntervalTable t(p);
  // property: word sets of two intervals either coincide or are disjoint
  std::unordered_map<Word, std::size_t, WordHash> first_class;
  for (std::size_t cls = 0; cls < t.class_words.size(); ++cls) {
    for (const Word& w : t.class_words[cls]) {
      auto [it, fresh] = first_class.emplace(w, cls);
      if (!fresh && it->second != cls) {
        if (witness)
          *witness = "word '" + word_str(w) + "' lies in two different interval sets";
        return false;
      }
    }
  }
  return true;
}

bool is_group_like_direct(const ChainSystem& c, std::size_t element_bound) {
  LabeledPoset p = build_poset(c);
  if (p.size() > element_bound)
    throw std::invalid_argument("poset exceeds direct group-like bound");
  IntervalTable t(p);
  const auto& cls = t.interval_class;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> m12, m13, m23;
  for (std::size_t x = 0; x < p.size(); ++x) {
    for (std::size_t y = 0; y < p.size(); ++y) {
      if (!p.leq(x, y)) continue;
      for (std::size_t z = 0; z < p.size(); ++z) {
        if (!p.leq(y, z)) continue;
        std::size_t a = cls[x][y], b = cls[x][z], d = cls[y][z];
        auto chk = [](std::map<std::pair<std::size_t, std::size_t>, std::size_t>& m,
                      std::size_t k1, std::size_t k2, std::size_t v) {
          auto [it, fresh] = m.emplace(std::make_pair(k1, k2), v);
          return fresh || it->second == v;
        };
        if (!chk(m12, a, b, d)) return false;
        if (!chk(m13, a, d, b)) return false;
        if (!chk(m23, b, d, a)) return false;
      }
    }
  }
  return true;
}

WeightMap unit_weights(const ChainSystem& c) {
  WeightMap w;
  for (const Letter& l : c.alphabet()) w[l] = Rat(1);
  return w;
}

bool is_weighted_graded(const ChainSystem& c, const WeightMap& weights) {
  for (const auto& [l, wt] : weights)
    if (wt <= Rat(0)) throw std::invalid_argument("weights must be positive");
  std::optional<Rat> total;
  for (const Word& w : c.words()) {
    Rat sum(0);
    for (const Letter& l : w) {
      auto it = weights.find(l);
      if (it == weights.end())
        throw std::invalid_argument("no weight for letter " + l.name());
      sum += it->second;
    }
    if (!total)
      total = sum;
    else if (*total != sum)
      return false;
  }
  return true;
}

GarsideReport is_garside(const ChainSystem& c, const WeightMap& weights,
                         std::size_t direct_group_like_bound) {
  GarsideReport rep;
  rep.weighted_graded = is_weighted_graded(c, weights);
  LabeledPoset p = build_poset(c);
  rep.bounded = p.unique_min().has_value() && p.unique_max().has_value();
  rep.balanced = is_balanced(c);
  std::string witness;
  rep.restriction_property = has_restriction_property(c, &witness);
  rep.group_like = rep.restriction_property;
  if (p.size() <= direct_group_like_bound) {
    rep.group_like_direct_ran = true;
    rep.group_like_direct = is_group_like_direct(c, direct_group_like_bound);
    rep.group_like = rep.group_like || rep.group_like_direct;
  }
  LatticeReport lat = lattice_check(p);
  rep.lattice = lat.is_lattice;
  std::ostringstream os;
  os << "elements=" << p.size() << " chains=" << c.size();
  if (!witness.empty()) os << "; restriction: " << witness;
  if (!lat.is_lattice) os << "; lattice: " << lat.witness;
  rep.detail = os.str();
  return rep;
}

}  // namespace ncchain
