#include "ncchain/finite_nc.hpp"

#include <algorithm>
#include <functional>
#include <queue>
#include <sstream>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace ncchain {

namespace {

struct RootWordHash {
  std::size_t operator()(const RootWord& w) const {
    std::hash<IntVec> h;
    std::size_t r = 14695981039346656037ull;
    for (const IntVec& v : w) r = (r ^ h(v)) * 1099511628211ull;
    return r;
  }
};

}  // namespace

Letter reflection_letter(const IntVec& root) { return Letter("t" + root_str(root)); }

IntVec root_of_reflection_letter(const Letter& l) {
  const std::string& s = l.name();
  if (s.size() < 3 || s[0] != 't' || s[1] != '(')
    throw std::invalid_argument("not a reflection letter: " + s);
  IntVec v;
  std::stringstream ss(s.substr(2, s.size() - 3));
  std::string item;
  while (std::getline(ss, item, ',')) v.push_back(std::stoll(item));
  return v;
}

IntVec reflect_root(const RootDatum& datum, const IntVec& beta, const IntVec& gamma) {
  Rat coeff = Rat(2) * datum.k_form(beta, gamma) / datum.k_form(beta, beta);
  if (coeff.denominator() != 1)
    throw std::runtime_error("non-integral reflection coefficient");
  IntVec out(gamma.size());
  for (std::size_t i = 0; i < gamma.size(); ++i)
    out[i] = gamma[i] - coeff.numerator() * beta[i];
  bool nonneg = true;
  for (Int x : out)
    if (x < 0) nonneg = false;
  if (!nonneg)
    for (Int& x : out) x = -x;
  return out;
}

FiniteNc::FiniteNc(RootDatum datum) : datum_(std::move(datum)) {
  if (datum_.type() != CartanType::finite)
    throw std::invalid_argument("finite-type datum required");
  IntVec big(datum_.rank(), 100);
  roots_ = datum_.positive_real_roots_bounded(big);
}

Mat FiniteNc::reflection(const IntVec& root) const {
  return datum_.reflection_of_root(root);
}

std::size_t FiniteNc::reflection_length(const Mat& w) const {
  Mat diff = w - Mat::identity(datum_.rank());
  return diff.rank();
}

bool FiniteNc::absolute_leq(const Mat& u, const Mat& w) const {
  return reflection_length(u) + reflection_length(u.inverse() * w) ==
         reflection_length(w);
}

std::vector<RootWord> FiniteNc::hurwitz_orbit(const RootWord& start,
                                              std::size_t cap) const {
  std::unordered_set<RootWord, RootWordHash> seen;
  std::queue<RootWord> frontier;
  seen.insert(start);
  frontier.push(start);
  while (!frontier.empty()) {
    RootWord w = frontier.front();
    frontier.pop();
    for (std::size_t i = 0; i + 1 < w.size(); ++i) {
      RootWord fwd = w;  // (b_i, b_{i+1}) -> (s_{b_i} b_{i+1}, b_i)
      fwd[i] = reflect_root(datum_, w[i], w[i + 1]);
      fwd[i + 1] = w[i];
      RootWord bwd = w;  // (b_i, b_{i+1}) -> (b_{i+1}, s_{b_{i+1}} b_i)
      bwd[i] = w[i + 1];
      bwd[i + 1] = reflect_root(datum_, w[i + 1], w[i]);
      for (RootWord* cand : {&fwd, &bwd}) {
        if (seen.insert(*cand).second) {
          if (seen.size() > cap)
            throw std::runtime_error("Hurwitz orbit exceeded cap of " +
                                     std::to_string(cap) + " words");
          frontier.push(*cand);
        }
      }
    }
  }
  std::vector<RootWord> out(seen.begin(), seen.end());
  std::sort(out.begin(), out.end());
  return out;
}

RootWord FiniteNc::defining_word() const {
  RootWord w;
  for (std::size_t i : datum_.cox_word()) {
    IntVec alpha(datum_.rank(), 0);
    alpha[i] = 1;
    w.push_back(alpha);
  }
  return w;
}

Letter FiniteNc::letter_of_root(const IntVec& root) const {
  return reflection_letter(root);
}

IntVec FiniteNc::root_of_letter(const Letter& l) const {
  return root_of_reflection_letter(l);
}

ChainSystem FiniteNc::coxeter_chain_system() const {
  auto orbit = hurwitz_orbit(defining_word());
  std::vector<Word> words;
  words.reserve(orbit.size());
  for (const RootWord& rw : orbit) {
    Word w;
    for (const IntVec& r : rw) w.push_back(reflection_letter(r));
    words.push_back(std::move(w));
  }
  return ChainSystem::from_words(std::move(words));
}

LabeledPoset FiniteNc::nc_lattice() const { return build_poset(coxeter_chain_system()); }

FiniteNc::WordCriteriaReport FiniteNc::verify_word_criteria() const {
  WordCriteriaReport rep;
  auto orbit = hurwitz_orbit(defining_word());
  rep.orbit_size = orbit.size();
  std::set<RootWord> orbit_set(orbit.begin(), orbit.end());

  // triangularity and Z-basis for every orbit word
  rep.orbit_words_are_triangular_bases = true;
  for (const RootWord& w : orbit) {
    bool tri = true;
    for (std::size_t i = 0; i < w.size() && tri; ++i)
      for (std::size_t j = 0; j < i && tri; ++j)
        if (datum_.ec_inv(w[i], w[j]) != Rat(0)) tri = false;
    Rat det = from_int_rows(w).det();
    if (!tri || (det != Rat(1) && det != Rat(-1)))
      rep.orbit_words_are_triangular_bases = false;
  }

  // maximal sequences for the pairwise condition 1 < t_i t_j <= c
  Mat c = datum_.coxeter_matrix();
  std::vector<IntVec> alphabet;
  std::vector<Mat> refl;
  for (const IntVec& r : roots_) {
    Mat t = reflection(r);
    if (absolute_leq(t, c)) {
      alphabet.push_back(r);
      refl.push_back(std::move(t));
    }
  }
  std::map<std::pair<std::size_t, std::size_t>, bool> pair_ok;
  auto rel = [&](std::size_t i, std::size_t j) {
    auto key = std::make_pair(i, j);
    auto it = pair_ok.find(key);
    if (it != pair_ok.end()) return it->second;
    Mat prod = refl[i] * refl[j];
    bool ok = prod != Mat::identity(datum_.rank()) && absolute_leq(prod, c);
    pair_ok.emplace(key, ok);
    return ok;
  };
  std::set<RootWord> maximal;
  RootWord cur;
  std::vector<std::size_t> cur_idx;
  std::function<void()> dfs = [&]() {
    bool is_max = true;
    for (std::size_t pos = 0; pos <= cur_idx.size() && is_max; ++pos) {
      for (std::size_t a = 0; a < alphabet.size() && is_max; ++a) {
        bool ok = true;
        for (std::size_t i = 0; i < pos && ok; ++i)
          if (!rel(cur_idx[i], a)) ok = false;
        for (std::size_t i = pos; i < cur_idx.size() && ok; ++i)
          if (!rel(a, cur_idx[i])) ok = false;
        if (ok) is_max = false;
      }
    }
    if (is_max) maximal.insert(cur);
    for (std::size_t a = 0; a < alphabet.size(); ++a) {
      bool ok = true;
      for (std::size_t i : cur_idx)
        if (!rel(i, a)) {
          ok = false;
          break;
        }
      if (!ok) continue;
      cur.push_back(alphabet[a]);
      cur_idx.push_back(a);
      dfs();
      cur.pop_back();
      cur_idx.pop_back();
    }
  };
  dfs();
  rep.maximal_pairwise_count = maximal.size();
  rep.braid_equals_maximal = maximal == orbit_set;

  // sequences of roots, pairwise E_{c^{-1}}-triangular, forming a Z-basis
  std::set<RootWord> triangular;
  RootWord seq;
  std::function<void()> dfs2 = [&]() {
    if (seq.size() == datum_.rank()) {
      Rat det = from_int_rows(seq).det();
      if (det == Rat(1) || det == Rat(-1)) triangular.insert(seq);
      return;
    }
    for (const IntVec& g : roots_) {
      bool ok = true;
      for (const IntVec& prev : seq)
        if (datum_.ec_inv(g, prev) != Rat(0)) {
          ok = false;
          break;
        }
      if (!ok) continue;
      seq.push_back(g);
      dfs2();
      seq.pop_back();
    }
  };
  dfs2();
  rep.triangular_basis_count = triangular.size();
  rep.braid_equals_triangular = triangular == orbit_set;
  return rep;
}

}  // namespace ncchain
