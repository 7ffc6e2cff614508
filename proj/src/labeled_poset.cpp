#include "ncchain/labeled_poset.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace ncchain {

LabeledPoset::LabeledPoset(std::vector<std::string> element_names,
                           std::vector<Cover> covers)
    : names_(std::move(element_names)), covers_(std::move(covers)) {
  const std::size_t n = names_.size();
  up_.assign(n, {});
  down_.assign(n, {});
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (const Cover& c : covers_) {
    if (c.lower >= n || c.upper >= n)
      throw std::invalid_argument("cover index out of range");
    if (c.lower == c.upper) throw std::invalid_argument("cover loop");
    if (!seen.insert({c.lower, c.upper}).second)
      throw std::invalid_argument("duplicate cover (labels must be unique per edge)");
    up_[c.lower].push_back(c.upper);
    down_[c.upper].push_back(c.lower);
  }
  for (auto& v : up_) std::sort(v.begin(), v.end());
  for (auto& v : down_) std::sort(v.begin(), v.end());

  // Reachability closure; detects cycles along the way.
  leq_.assign(n, std::vector<char>(n, 0));
  std::vector<int> state(n, 0);
  std::vector<std::size_t> topo;
  std::vector<std::pair<std::size_t, std::size_t>> stack;
  for (std::size_t s = 0; s < n; ++s) {
    if (state[s]) continue;
    stack.push_back({s, 0});
    state[s] = 1;
    while (!stack.empty()) {
      auto& [v, idx] = stack.back();
      if (idx < up_[v].size()) {
        std::size_t w = up_[v][idx++];
        if (state[w] == 1) throw std::invalid_argument("cover graph has a cycle");
        if (state[w] == 0) {
          state[w] = 1;
          stack.push_back({w, 0});
        }
      } else {
        state[v] = 2;
        topo.push_back(v);
        stack.pop_back();
      }
    }
  }
  // topo has sinks first; propagate reachability upward.
  for (std::size_t v : topo) {
    leq_[v][v] = 1;
    for (std::size_t w : up_[v])
      for (std::size_t t = 0; t < n; ++t)
        if (leq_[w][t]) leq_[v][t] = 1;
  }

  // Irredundancy: a cover must not be implied by a longer path.
  for (const Cover& c : covers_) {
    for (std::size_t mid : up_[c.lower]) {
      if (mid != c.upper && leq_[mid][c.upper])
        throw std::invalid_argument("transitive cover: " + names_[c.lower] +
                                    " < " + names_[c.upper]);
    }
  }
}

Letter LabeledPoset::label(std::size_t lower, std::size_t upper) const {
  for (const Cover& c : covers_)
    if (c.lower == lower && c.upper == upper) return c.label;
  throw std::invalid_argument("no such cover");
}

std::vector<std::size_t> LabeledPoset::minimal_elements() const {
  std::vector<std::size_t> r;
  for (std::size_t i = 0; i < size(); ++i)
    if (down_[i].empty()) r.push_back(i);
  return r;
}

std::vector<std::size_t> LabeledPoset::maximal_elements() const {
  std::vector<std::size_t> r;
  for (std::size_t i = 0; i < size(); ++i)
    if (up_[i].empty()) r.push_back(i);
  return r;
}

std::optional<std::size_t> LabeledPoset::unique_min() const {
  auto m = minimal_elements();
  if (m.size() == 1) return m[0];
  return std::nullopt;
}

std::optional<std::size_t> LabeledPoset::unique_max() const {
  auto m = maximal_elements();
  if (m.size() == 1) return m[0];
  return std::nullopt;
}

std::size_t LabeledPoset::height() const {
  // longest path in the cover DAG
  std::vector<std::size_t> order(size());
  for (std::size_t i = 0; i < size(); ++i) order[i] = i;
  std::vector<long long> len(size(), -1);
  std::size_t best = 0;
  // memoized DFS
  std::function<long long(std::size_t)> go = [&](std::size_t v) -> long long {
    if (len[v] >= 0) return len[v];
    long long b = 0;
    for (std::size_t w : up_[v]) b = std::max(b, 1 + go(w));
    return len[v] = b;
  };
  for (std::size_t v : order) best = std::max<std::size_t>(best, go(v));
  return best;
}

std::vector<std::vector<std::size_t>> LabeledPoset::maximal_chains() const {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> path;
  std::function<void(std::size_t)> go = [&](std::size_t v) {
    path.push_back(v);
    if (up_[v].empty())
      out.push_back(path);
    else
      for (std::size_t w : up_[v]) go(w);
    path.pop_back();
  };
  for (std::size_t s : minimal_elements()) go(s);
  return out;
}

std::vector<Word> LabeledPoset::maximal_chain_words() const {
  std::vector<Word> out;
  for (const auto& chain : maximal_chains()) {
    Word w;
    for (std::size_t i = 0; i + 1 < chain.size(); ++i)
      w.push_back(label(chain[i], chain[i + 1]));
    out.push_back(std::move(w));
  }
  std::sort(out.begin(), out.end(), word_less);
  return out;
}

std::vector<Word> LabeledPoset::interval_words(std::size_t a, std::size_t b) const {
  std::vector<Word> out;
  if (!leq(a, b)) return out;
  Word w;
  std::function<void(std::size_t)> go = [&](std::size_t v) {
    if (v == b) {
      out.push_back(w);
      return;
    }
    for (std::size_t x : up_[v]) {
      if (!leq(x, b)) continue;
      w.push_back(label(v, x));
      go(x);
      w.pop_back();
    }
  };
  go(a);
  std::sort(out.begin(), out.end(), word_less);
  return out;
}

LatticeReport lattice_check(const LabeledPoset& p) {
  LatticeReport rep;
  const std::size_t n = p.size();
  if (!p.unique_min() || !p.unique_max()) {
    rep.has_bounds = false;
    rep.witness = "missing unique minimum or maximum";
    return rep;
  }
  rep.has_bounds = true;
  // join: unique minimal common upper bound; meet dually
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      for (int pass = 0; pass < 2; ++pass) {
        std::vector<std::size_t> bounds;
        for (std::size_t u = 0; u < n; ++u) {
          bool ok = pass == 0 ? (p.leq(a, u) && p.leq(b, u))
                              : (p.leq(u, a) && p.leq(u, b));
          if (ok) bounds.push_back(u);
        }
        std::size_t extremal_count = 0;
        std::size_t extremal = 0;
        for (std::size_t u : bounds) {
          bool ext = true;
          for (std::size_t v : bounds) {
            if (v == u) continue;
            if (pass == 0 ? p.leq(v, u) : p.leq(u, v)) {
              ext = false;
              break;
            }
          }
          if (ext) {
            ++extremal_count;
            extremal = u;
          }
        }
        (void)extremal;
        if (extremal_count != 1) {
          rep.is_lattice = false;
          rep.witness = std::string(pass == 0 ? "no join" : "no meet") + " for " +
                        p.name(a) + " , " + p.name(b);
          return rep;
        }
      }
    }
  }
  rep.is_lattice = true;
  return rep;
}

LabeledPoset labeled_product(const LabeledPoset& p, const LabeledPoset& q) {
  {
    auto lp = poset_labels(p);
    auto lq = poset_labels(q);
    std::set<Letter> sp(lp.begin(), lp.end());
    for (const Letter& l : lq)
      if (sp.count(l))
        throw std::invalid_argument("label collision in labeled product: " + l.name());
  }
  const std::size_t np = p.size(), nq = q.size();
  std::vector<std::string> names(np * nq);
  for (std::size_t i = 0; i < np; ++i)
    for (std::size_t j = 0; j < nq; ++j)
      names[i * nq + j] = p.name(i) + "|" + q.name(j);
  std::vector<Cover> covers;
  for (const Cover& c : p.covers())
    for (std::size_t j = 0; j < nq; ++j)
      covers.push_back({c.lower * nq + j, c.upper * nq + j, c.label});
  for (const Cover& c : q.covers())
    for (std::size_t i = 0; i < np; ++i)
      covers.push_back({i * nq + c.lower, i * nq + c.upper, c.label});
  return LabeledPoset(std::move(names), std::move(covers));
}

std::vector<Letter> poset_labels(const LabeledPoset& p) {
  std::set<Letter> s;
  for (const Cover& c : p.covers()) s.insert(c.label);
  return std::vector<Letter>(s.begin(), s.end());
}

namespace {

struct Signature {
  std::size_t indeg, outdeg, up_height, down_height;
  bool operator<(const Signature& o) const {
    return std::tie(indeg, outdeg, up_height, down_height) <
           std::tie(o.indeg, o.outdeg, o.up_height, o.down_height);
  }
  bool operator==(const Signature& o) const {
    return std::tie(indeg, outdeg, up_height, down_height) ==
           std::tie(o.indeg, o.outdeg, o.up_height, o.down_height);
  }
};

std::vector<Signature> signatures(const LabeledPoset& p) {
  const std::size_t n = p.size();
  std::vector<Signature> sig(n);
  std::vector<long long> uph(n, -1), downh(n, -1);
  std::function<long long(std::size_t)> goup = [&](std::size_t v) -> long long {
    if (uph[v] >= 0) return uph[v];
    long long b = 0;
    for (std::size_t w : p.up(v)) b = std::max(b, 1 + goup(w));
    return uph[v] = b;
  };
  std::function<long long(std::size_t)> godown = [&](std::size_t v) -> long long {
    if (downh[v] >= 0) return downh[v];
    long long b = 0;
    for (std::size_t w : p.down(v)) b = std::max(b, 1 + godown(w));
    return downh[v] = b;
  };
  for (std::size_t v = 0; v < n; ++v) {
    sig[v] = {p.down(v).size(), p.up(v).size(),
              static_cast<std::size_t>(goup(v)), static_cast<std::size_t>(godown(v))};
  }
  return sig;
}

struct IsoSearch {
  const LabeledPoset& p;
  const LabeledPoset& q;
  const std::map<Letter, Letter>* fixed_labels;
  std::vector<Signature> sp, sq;
  std::vector<long long> map_pq;         // element map p -> q
  std::vector<char> used_q;
  std::map<Letter, Letter> lab_fwd;      // label map built on the fly
  std::map<Letter, Letter> lab_bwd;
  std::vector<std::size_t> order;        // order in which p's elements are mapped

  bool label_compatible(Letter a, Letter b) {
    if (fixed_labels) {
      auto it = fixed_labels->find(a);
      return it != fixed_labels->end() && it->second == b;
    }
    auto f = lab_fwd.find(a);
    auto g = lab_bwd.find(b);
    if (f == lab_fwd.end() && g == lab_bwd.end()) return true;  // new pair
    return f != lab_fwd.end() && f->second == b;
  }

  void bind_label(Letter a, Letter b, std::vector<std::pair<Letter, Letter>>& bound) {
    if (fixed_labels) return;
    if (!lab_fwd.count(a)) {
      lab_fwd.emplace(a, b);
      lab_bwd.emplace(b, a);
      bound.push_back({a, b});
    }
  }

  bool try_map(std::size_t idx) {
    if (idx == order.size()) return true;
    std::size_t v = order[idx];
    for (std::size_t w = 0; w < q.size(); ++w) {
      if (used_q[w] || !(sp[v] == sq[w])) continue;
      // covers between v and already-mapped elements must correspond
      bool ok = true;
      std::vector<std::pair<Letter, Letter>> bound;
      for (std::size_t j = 0; j < idx && ok; ++j) {
        std::size_t u = order[j];
        std::size_t u2 = static_cast<std::size_t>(map_pq[u]);
        bool c1 = std::binary_search(p.up(u).begin(), p.up(u).end(), v);
        bool c2 = std::binary_search(q.up(u2).begin(), q.up(u2).end(), w);
        if (c1 != c2) { ok = false; break; }
        if (c1) {
          Letter a = p.label(u, v), b = q.label(u2, w);
          if (!label_compatible(a, b)) { ok = false; break; }
          bind_label(a, b, bound);
        }
        bool d1 = std::binary_search(p.down(u).begin(), p.down(u).end(), v);
        bool d2 = std::binary_search(q.down(u2).begin(), q.down(u2).end(), w);
        if (d1 != d2) { ok = false; break; }
        if (d1) {
          Letter a = p.label(v, u), b = q.label(w, u2);
          if (!label_compatible(a, b)) { ok = false; break; }
          bind_label(a, b, bound);
        }
      }
      if (ok) {
        map_pq[v] = static_cast<long long>(w);
        used_q[w] = 1;
        if (try_map(idx + 1)) return true;
        used_q[w] = 0;
        map_pq[v] = -1;
      }
      for (auto& [a, b] : bound) {
        lab_fwd.erase(a);
        lab_bwd.erase(b);
      }
    }
    return false;
  }
};

}  // namespace

bool isomorphic_labeled(const LabeledPoset& p, const LabeledPoset& q,
                        const std::map<Letter, Letter>* label_map,
                        std::size_t element_bound) {
  if (p.size() != q.size()) return false;
  if (p.covers().size() != q.covers().size()) return false;
  if (p.size() > element_bound)
    throw std::invalid_argument("poset too large for isomorphism search");
  if (label_map) {
    auto lp = poset_labels(p);
    auto lq = poset_labels(q);
    if (lp.size() != lq.size()) return false;
    std::set<Letter> image;
    for (const Letter& l : lp) {
      auto it = label_map->find(l);
      if (it == label_map->end()) throw std::invalid_argument("label map misses " + l.name());
      if (!image.insert(it->second).second)
        throw std::invalid_argument("label map not injective");
    }
    for (const Letter& l : lq)
      if (!image.count(l)) return false;
  } else if (poset_labels(p).size() != poset_labels(q).size()) {
    return false;
  }

  IsoSearch s{p, q, label_map};
  s.sp = signatures(p);
  s.sq = signatures(q);
  {
    auto a = s.sp;
    auto b = s.sq;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (!(a == b)) return false;
  }
  s.map_pq.assign(p.size(), -1);
  s.used_q.assign(q.size(), 0);
  // Map elements in BFS order from the bottom so each new element is
  // constrained by already-mapped neighbors.
  std::vector<char> seen(p.size(), 0);
  std::vector<std::size_t> queue = p.minimal_elements();
  for (std::size_t v : queue) seen[v] = 1;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    std::size_t v = queue[head];
    s.order.push_back(v);
    for (std::size_t w : p.up(v))
      if (!seen[w]) {
        seen[w] = 1;
        queue.push_back(w);
      }
  }
  for (std::size_t v = 0; v < p.size(); ++v)
    if (!seen[v]) s.order.push_back(v);
  return s.try_map(0);
}

std::string to_dot(const LabeledPoset& p) {
  std::ostringstream os;
  os << "digraph poset {\n  rankdir=BT;\n  node [shape=box];\n";
  for (std::size_t i = 0; i < p.size(); ++i)
    os << "  n" << i << " [label=\"" << p.name(i) << "\"];\n";
  std::vector<Cover> cs = p.covers();
  std::sort(cs.begin(), cs.end(), [](const Cover& a, const Cover& b) {
    return std::tie(a.lower, a.upper) < std::tie(b.lower, b.upper);
  });
  for (const Cover& c : cs)
    os << "  n" << c.lower << " -> n" << c.upper << " [label=\"" << c.label.name()
       << "\"];\n";
  os << "}\n";
  return os.str();
}

}  // namespace ncchain
