#include "ncchain/affine_mcsul.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <queue>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

#include "ncchain/finite_nc.hpp"

namespace ncchain {

Mat dual_action(const Mat& v_matrix) { return v_matrix.inverse().transpose(); }

std::optional<RatVec> translation_vector(const Mat& w, const IntVec& delta) {
  const std::size_t n = w.rows();
  Mat u = w - Mat::identity(n);
  RatVec mu(n);
  for (std::size_t i = 0; i < n; ++i) mu[i] = u(i, 0) / Rat(delta[0]);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i)
      if (u(i, j) != Rat(delta[j]) * mu[i]) return std::nullopt;
  return mu;
}

std::size_t HorizontalData::xi_size() const {
  std::size_t s = 0;
  for (const auto& c : cycles) s += c.size();
  return s;
}

std::size_t HorizontalData::component_of(const IntVec& root) const {
  auto it = component_by_root.find(root);
  if (it == component_by_root.end())
    throw std::invalid_argument("not a horizontal alphabet root: " + root_str(root));
  return it->second;
}

std::pair<std::size_t, std::size_t> HorizontalData::locate(const IntVec& xi_root) const {
  auto it = xi_position.find(xi_root);
  if (it == xi_position.end())
    throw std::invalid_argument("not a Xi root: " + root_str(xi_root));
  return it->second;
}

IntVec HorizontalData::composite(std::size_t comp, std::size_t pos, std::size_t k) const {
  const auto& cyc = cycles[comp];
  IntVec sum(cyc[0].size(), 0);
  for (std::size_t t = 0; t < k; ++t) {
    const IntVec& b = cyc[(pos + t) % cyc.size()];
    for (std::size_t j = 0; j < sum.size(); ++j) sum[j] += b[j];
  }
  return sum;
}

namespace {

struct HorizontalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

bool proper_support(const IntVec& v) {
  for (Int x : v)
    if (x == 0) return true;
  return false;
}

}  // namespace

McSul::McSul(RootDatum datum, std::vector<Rat> q)
    : datum_(std::move(datum)), q_(std::move(q)) {
  if (datum_.type() != CartanType::affine)
    throw std::invalid_argument("affine datum required");
  compute_horizontal();
  if (q_.empty()) q_.assign(m(), Rat(1, static_cast<Int>(m() == 0 ? 1 : m())));
  if (m() < 2) return;  // horizontal data is still available
  if (q_.size() != m()) throw std::invalid_argument("q must have one entry per component");
  Rat total(0);
  for (const Rat& x : q_) {
    if (x <= Rat(0)) throw std::invalid_argument("q entries must be positive");
    total += x;
  }
  if (total != Rat(1)) throw std::invalid_argument("q entries must sum to 1");
  c_dual_ = dual_action(datum_.coxeter_matrix());
  compute_translations();
  compute_intervals();
  compute_bijection();
}

void McSul::compute_horizontal() {
  const std::size_t n = datum_.rank();
  const IntVec& delta = datum_.delta();
  auto box_roots = datum_.positive_real_roots_bounded(delta);
  std::set<IntVec> th_set;
  for (const IntVec& r : box_roots)
    if (proper_support(r) && datum_.is_horizontal(r)) th_set.insert(r);
  horiz_.th_roots.assign(th_set.begin(), th_set.end());

  // composite roots are proper orbit-segment sums of others
  const Mat& c = datum_.coxeter_matrix();
  std::set<IntVec> composite;
  for (const IntVec& x : horiz_.th_roots) {
    IntVec sum = x;
    IntVec iter = x;
    for (std::size_t t = 1; t <= n + 2; ++t) {
      iter = c.apply_int(iter);
      for (std::size_t j = 0; j < n; ++j) sum[j] += iter[j];
      if (th_set.count(sum)) composite.insert(sum);
    }
  }
  std::vector<IntVec> xi;
  for (const IntVec& r : horiz_.th_roots)
    if (!composite.count(r)) xi.push_back(r);

  // c-cycles on Xi
  std::set<IntVec> xi_set(xi.begin(), xi.end());
  std::set<IntVec> visited;
  for (const IntVec& start : xi) {
    if (visited.count(start)) continue;
    std::vector<IntVec> cycle{start};
    visited.insert(start);
    IntVec cur = c.apply_int(start);
    while (cur != start) {
      if (!xi_set.count(cur))
        throw HorizontalError("c does not permute the extracted Xi roots");
      if (visited.count(cur)) throw HorizontalError("Xi orbits are not disjoint cycles");
      visited.insert(cur);
      cycle.push_back(cur);
      cur = c.apply_int(cur);
    }
    if (cycle.size() < 2)
      throw HorizontalError("component cycle of length < 2 (unsupported input)");
    horiz_.cycles.push_back(std::move(cycle));
  }
  std::sort(horiz_.cycles.begin(), horiz_.cycles.end(),
            [](const auto& a, const auto& b) {
              return *std::min_element(a.begin(), a.end()) <
                     *std::min_element(b.begin(), b.end());
            });

  // cross-checks tying the pieces together
  if (!horiz_.th_roots.empty()) {
    std::size_t msz = horiz_.m();
    if (horiz_.xi_size() != n - 2 + msz)
      throw HorizontalError("|Xi| != n - 2 + m");
    std::set<IntVec> rebuilt;
    std::size_t expected_th = 0;
    for (std::size_t i = 0; i < msz; ++i) {
      std::size_t r = horiz_.rank_of_component(i);
      expected_th += r * (r - 1);
      for (std::size_t p = 0; p < r; ++p) {
        for (std::size_t k = 1; k < r; ++k) {
          if (!rebuilt.insert(horiz_.composite(i, p, k)).second)
            throw HorizontalError("orbit-segment roots are not distinct");
        }
      }
      IntVec full = horiz_.composite(i, 0, r);
      if (full != datum_.delta())
        throw HorizontalError("component cycle does not sum to delta");
    }
    if (expected_th != horiz_.th_roots.size() ||
        rebuilt != std::set<IntVec>(horiz_.th_roots.begin(), horiz_.th_roots.end()))
      throw HorizontalError("T_H is not the set of orbit-segment roots");
  }

  // components via K-pairing; one cycle per component
  for (std::size_t i = 0; i < horiz_.m(); ++i)
    for (const IntVec& b : horiz_.cycles[i]) {
      std::size_t p = 0;
      while (horiz_.cycles[i][p] != b) ++p;
      horiz_.xi_position[b] = {i, p};
    }
  for (const IntVec& r : horiz_.th_roots) {
    std::size_t comp = horiz_.m();
    for (std::size_t i = 0; i < horiz_.m() && comp == horiz_.m(); ++i)
      for (const IntVec& b : horiz_.cycles[i])
        if (datum_.k_form(r, b) != Rat(0)) {
          comp = i;
          break;
        }
    if (comp == horiz_.m())
      throw HorizontalError("horizontal root pairs trivially with every cycle");
    horiz_.component_by_root[r] = comp;
  }
  for (std::size_t i = 0; i < horiz_.m(); ++i)
    for (const IntVec& b : horiz_.cycles[i])
      if (horiz_.component_by_root.at(b) != i)
        throw HorizontalError("cycle straddles two components");
}

Letter McSul::th_letter(const IntVec& root) const { return reflection_letter(root); }

Int McSul::scaled_weight(const Letter& l) const {
  return l.name()[0] == 'f' ? 2 : static_cast<Int>(m());
}

WeightMap McSul::letter_weights() const {
  WeightMap w;
  for (const IntVec& r : horiz_.th_roots) w[th_letter(r)] = Rat(1);
  for (const FactoredTranslation& f : f_letters_)
    w[f.letter] = Rat(2, static_cast<Int>(m()));
  return w;
}

void McSul::compute_translations() {
  const std::size_t n = datum_.rank();
  const IntVec& delta = datum_.delta();
  Mat s = datum_.cartan().symmetrized();

  // directions of co-root images in the dual space
  std::set<IntVec> coroot_dirs;
  for (const IntVec& g : datum_.positive_real_roots_bounded(delta)) {
    RatVec img(n, Rat(0));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) img[i] += s(i, j) * Rat(g[j]);
    coroot_dirs.insert(primitive_direction(img));
  }

  // per component: orderings of r-1 horizontal reflections, consecutive
  // pairs non-orthogonal and all other pairs orthogonal
  std::vector<std::vector<IntVec>> comp_roots(m());
  for (const IntVec& r : horiz_.th_roots)
    comp_roots[horiz_.component_of(r)].push_back(r);
  std::vector<std::vector<std::vector<IntVec>>> comp_seqs(m());
  for (std::size_t i = 0; i < m(); ++i) {
    std::size_t want = horiz_.rank_of_component(i) - 1;
    std::vector<IntVec> seq;
    std::function<void()> dfs = [&]() {
      if (seq.size() == want) {
        comp_seqs[i].push_back(seq);
        return;
      }
      for (const IntVec& r : comp_roots[i]) {
        bool ok = true;
        for (std::size_t j = 0; j < seq.size() && ok; ++j) {
          bool orth = datum_.k_form(seq[j], r) == Rat(0);
          if (j + 1 == seq.size() ? orth : !orth) ok = false;
        }
        if (std::find(seq.begin(), seq.end(), r) != seq.end()) ok = false;
        if (!ok) continue;
        seq.push_back(r);
        dfs();
        seq.pop_back();
      }
    };
    dfs();
    if (comp_seqs[i].empty())
      throw HorizontalError("no Coxeter-factor ordering in component " +
                            std::to_string(i + 1));
  }

  // combine per-component sequences, test w = c v^{-1} for being a
  // translation along a co-root direction
  std::unordered_set<std::string> seen;
  std::vector<std::size_t> pick(m(), 0);
  std::function<void(std::size_t)> combine = [&](std::size_t comp) {
    if (comp == m()) {
      Mat v = Mat::identity(n);
      std::vector<IntVec> hword;
      for (std::size_t i = 0; i < m(); ++i) {
        for (const IntVec& r : comp_seqs[i][pick[i]]) {
          v = v * datum_.reflection_of_root(r).transpose();
          hword.push_back(r);
        }
      }
      Mat w = c_dual_ * v.inverse();
      auto mu = translation_vector(w, delta);
      if (!mu) return;
      bool zero = true;
      for (const Rat& x : *mu)
        if (x != Rat(0)) zero = false;
      if (zero) return;
      if (!coroot_dirs.count(primitive_direction(*mu))) return;
      if (!seen.insert(w.key()).second) return;
      IntervalTranslation t;
      t.element = std::move(w);
      t.mu = std::move(*mu);
      t.hword = std::move(hword);
      translations_.push_back(std::move(t));
      return;
    }
    for (pick[comp] = 0; pick[comp] < comp_seqs[comp].size(); ++pick[comp])
      combine(comp + 1);
  };
  combine(0);
  if (translations_.empty())
    throw HorizontalError("no translations found below the Coxeter element");

  // orthogonal decomposition E_0 = U_0 + U_1 + ... + U_m used to factor.
  // Images K(.,beta) span U_i; U_0 is cut out by <x,delta> = 0 and
  // <x,beta> = 0 for all beta in Xi.
  std::vector<std::vector<RatVec>> comp_basis(m());
  for (std::size_t i = 0; i < m(); ++i) {
    std::vector<RatVec> cand;
    for (const IntVec& b : horiz_.cycles[i]) {
      RatVec img(n, Rat(0));
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t j = 0; j < n; ++j) img[r] += s(r, j) * Rat(b[j]);
      cand.push_back(img);
    }
    // extract an independent subset
    for (const RatVec& v : cand) {
      std::vector<RatVec> test = comp_basis[i];
      test.push_back(v);
      Mat mm(test.size(), n);
      for (std::size_t a = 0; a < test.size(); ++a)
        for (std::size_t bcol = 0; bcol < n; ++bcol) mm(a, bcol) = test[a][bcol];
      if (mm.rank() == test.size()) comp_basis[i].push_back(v);
    }
    if (comp_basis[i].size() != horiz_.rank_of_component(i) - 1)
      throw HorizontalError("component image space has unexpected dimension");
  }
  RatVec axis;
  {
    std::size_t rows = 1 + horiz_.xi_size();
    Mat constraints(rows, n);
    for (std::size_t j = 0; j < n; ++j) constraints(0, j) = Rat(delta[j]);
    std::size_t row = 1;
    for (const auto& cyc : horiz_.cycles)
      for (const IntVec& b : cyc) {
        for (std::size_t j = 0; j < n; ++j) constraints(row, j) = Rat(b[j]);
        ++row;
      }
    auto ker = constraints.kernel();
    if (ker.size() != 1)
      throw HorizontalError("Coxeter-axis direction is not 1-dimensional");
    axis = ker[0];
  }

  // solve lambda = sum of block components for each translation
  std::vector<RatVec> columns;
  for (std::size_t i = 0; i < m(); ++i)
    for (const RatVec& v : comp_basis[i]) columns.push_back(v);
  columns.push_back(axis);
  Mat a(n, columns.size());
  for (std::size_t j = 0; j < columns.size(); ++j)
    for (std::size_t i = 0; i < n; ++i) a(i, j) = columns[j][i];

  std::map<std::pair<std::size_t, std::string>, std::size_t> f_index;
  for (IntervalTranslation& t : translations_) {
    // Gaussian solve of a * x = mu (consistent by construction)
    Mat aug(n, columns.size() + 1);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < columns.size(); ++j) aug(i, j) = a(i, j);
      aug(i, columns.size()) = t.mu[i];
    }
    // forward elimination with partial pivoting by exact nonzero
    std::size_t rowcount = n, colcount = columns.size();
    std::vector<std::size_t> pivot_of_col(colcount, static_cast<std::size_t>(-1));
    std::size_t rr = 0;
    for (std::size_t cc = 0; cc < colcount && rr < rowcount; ++cc) {
      std::size_t piv = rr;
      while (piv < rowcount && aug(piv, cc) == Rat(0)) ++piv;
      if (piv == rowcount) continue;
      for (std::size_t j = 0; j <= colcount; ++j) std::swap(aug(piv, j), aug(rr, j));
      Rat p = aug(rr, cc);
      for (std::size_t j = 0; j <= colcount; ++j) aug(rr, j) /= p;
      for (std::size_t i2 = 0; i2 < rowcount; ++i2) {
        if (i2 == rr || aug(i2, cc) == Rat(0)) continue;
        Rat f = aug(i2, cc);
        for (std::size_t j = 0; j <= colcount; ++j) aug(i2, j) -= f * aug(rr, j);
      }
      pivot_of_col[cc] = rr;
      ++rr;
    }
    for (std::size_t i2 = rr; i2 < rowcount; ++i2)
      if (aug(i2, colcount) != Rat(0))
        throw HorizontalError("translation vector outside the decomposition span");
    RatVec coeff(colcount, Rat(0));
    for (std::size_t cc = 0; cc < colcount; ++cc)
      if (pivot_of_col[cc] != static_cast<std::size_t>(-1))
        coeff[cc] = aug(pivot_of_col[cc], colcount);

    RatVec lambda0(n, Rat(0));
    for (std::size_t i = 0; i < n; ++i) lambda0[i] = coeff[colcount - 1] * axis[i];
    std::size_t idx = 0;
    Mat product = Mat::identity(n);
    for (std::size_t compi = 0; compi < m(); ++compi) {
      RatVec mu_f(n, Rat(0));
      for (const RatVec& v : comp_basis[compi]) {
        for (std::size_t i = 0; i < n; ++i) mu_f[i] += coeff[idx] * v[i];
        ++idx;
      }
      for (std::size_t i = 0; i < n; ++i) mu_f[i] += q_[compi] * lambda0[i];
      bool zero = true;
      for (const Rat& x : mu_f)
        if (x != Rat(0)) zero = false;
      if (zero) throw HorizontalError("degenerate factored translation");
      Mat fe = Mat::identity(n);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) fe(i, j) += mu_f[i] * Rat(delta[j]);
      product = product * fe;
      std::string mukey;
      for (const Rat& x : mu_f) mukey += to_string(x) + ",";
      auto [it, fresh] =
          f_index.emplace(std::make_pair(compi, mukey), f_letters_.size());
      if (fresh) {
        FactoredTranslation f;
        f.component = compi;
        f.mu = mu_f;
        f.element = fe;
        std::string name = "f" + std::to_string(compi + 1) + "(";
        for (std::size_t i = 0; i < n; ++i)
          name += (i ? "," : "") + to_string(mu_f[i]);
        name += ")";
        f.letter = Letter(name);
        f_letters_.push_back(std::move(f));
      }
      t.factor_ids.push_back(it->second);
    }
    if (product != t.element)
      throw HorizontalError("factored translations do not multiply back");
  }
  if (f_letters_.size() != horiz_.xi_size())
    throw HorizontalError("expected |F| = |Xi|, got " +
                          std::to_string(f_letters_.size()) + " vs " +
                          std::to_string(horiz_.xi_size()));
}

void McSul::compute_intervals() {
  const std::size_t n = datum_.rank();
  intervals_.resize(m());
  const IntervalTranslation& t0 = translations_.front();
  for (std::size_t i = 0; i < m(); ++i) {
    IntervalData& iv = intervals_[i];
    iv.c_i = f_letters_[t0.factor_ids[i]].element;
    for (const IntVec& r : t0.hword)
      if (horiz_.component_of(r) == i)
        iv.c_i = iv.c_i * datum_.reflection_of_root(r).transpose();

    for (const IntVec& r : horiz_.th_roots)
      if (horiz_.component_of(r) == i)
        iv.letters.push_back({th_letter(r), datum_.reflection_of_root(r).transpose()});
    for (const FactoredTranslation& f : f_letters_)
      if (f.component == i) iv.letters.push_back({f.letter, f.element});
    std::sort(iv.letters.begin(), iv.letters.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });

    iv.budget = static_cast<Int>(m()) *
                    static_cast<Int>(horiz_.rank_of_component(i) - 1) +
                2;

    // shortest weighted word length to every reachable element
    using QE = std::pair<Int, std::string>;
    std::priority_queue<QE, std::vector<QE>, std::greater<QE>> pq;
    Mat id = Mat::identity(n);
    iv.fwd[id.key()] = 0;
    iv.elements.emplace(id.key(), id);
    pq.push({0, id.key()});
    while (!pq.empty()) {
      auto [wt, key] = pq.top();
      pq.pop();
      if (iv.fwd.at(key) != wt) continue;
      const Mat cur = iv.elements.at(key);
      for (const auto& [letter, mat] : iv.letters) {
        Int nwt = wt + scaled_weight(letter);
        if (nwt > iv.budget) continue;
        Mat nxt = cur * mat;
        std::string nkey = nxt.key();
        auto it = iv.fwd.find(nkey);
        if (it == iv.fwd.end() || it->second > nwt) {
          iv.fwd[nkey] = nwt;
          iv.elements.emplace(nkey, std::move(nxt));
          pq.push({nwt, nkey});
        }
      }
    }
    auto ci_it = iv.fwd.find(iv.c_i.key());
    if (ci_it == iv.fwd.end() || ci_it->second != iv.budget)
      throw HorizontalError("component Coxeter factor has wrong weighted length");

    // interval membership and covers
    std::vector<std::pair<Int, std::string>> members;
    for (const auto& [key, wt] : iv.fwd) {
      Mat rest = iv.elements.at(key).inverse() * iv.c_i;
      auto jt = iv.fwd.find(rest.key());
      if (jt != iv.fwd.end() && wt + jt->second == iv.budget)
        members.push_back({wt, key});
    }
    std::sort(members.begin(), members.end());
    std::map<std::string, std::size_t> index;
    std::vector<std::string> names;
    for (std::size_t e = 0; e < members.size(); ++e) {
      index[members[e].second] = e;
      names.push_back("v" + std::to_string(e));
    }
    std::vector<Cover> covers;
    for (const auto& [wt, key] : members) {
      const Mat& cur = iv.elements.at(key);
      for (const auto& [letter, mat] : iv.letters) {
        Int nwt = wt + scaled_weight(letter);
        if (nwt > iv.budget) continue;
        std::string nkey = (cur * mat).key();
        auto it = index.find(nkey);
        if (it != index.end() && iv.fwd.at(nkey) == nwt)
          covers.push_back({index.at(key), it->second, letter});
      }
    }
    iv.poset = LabeledPoset(std::move(names), std::move(covers));
  }
}

bool McSul::interval_prefix(std::size_t comp, const std::vector<Letter>& letters) const {
  if (m() < 2) throw std::invalid_argument("factored structure needs m >= 2");
  const IntervalData& iv = intervals_.at(comp);
  Mat cur = Mat::identity(datum_.rank());
  Int wt = 0;
  for (const Letter& l : letters) {
    const Mat* mat = nullptr;
    for (const auto& [cand, cmat] : iv.letters)
      if (cand == l) mat = &cmat;
    if (!mat) throw std::invalid_argument("letter outside component: " + l.name());
    cur = cur * *mat;
    wt += scaled_weight(l);
    auto it = iv.fwd.find(cur.key());
    if (it == iv.fwd.end() || it->second != wt) return false;
  }
  Mat rest = cur.inverse() * iv.c_i;
  auto jt = iv.fwd.find(rest.key());
  return jt != iv.fwd.end() && wt + jt->second == iv.budget;
}

void McSul::compute_bijection() {
  for (std::size_t i = 0; i < m(); ++i) {
    for (const IntVec& beta : horiz_.cycles[i]) {
      Letter t_beta = th_letter(beta);
      std::optional<std::size_t> found;
      for (std::size_t fi = 0; fi < f_letters_.size(); ++fi) {
        const FactoredTranslation& f = f_letters_[fi];
        if (f.component != i) continue;
        bool ft = interval_prefix(i, {f.letter, t_beta});
        bool tf = interval_prefix(i, {t_beta, f.letter});
        if (ft && !tf) {
          if (found)
            throw HorizontalError("factored-translation assignment not unique at " +
                                  root_str(beta));
          found = fi;
        }
      }
      if (!found)
        throw HorizontalError("no factored translation assigned to " + root_str(beta));
      xi_to_f_[beta] = *found;
    }
  }
}

const FactoredTranslation& McSul::f_of_xi(const IntVec& xi_root) const {
  auto it = xi_to_f_.find(xi_root);
  if (it == xi_to_f_.end())
    throw std::invalid_argument("no factored translation for " + root_str(xi_root));
  return f_letters_[it->second];
}

const LabeledPoset& McSul::factorable_interval(std::size_t comp) const {
  if (m() < 2) throw std::invalid_argument("factored structure needs m >= 2");
  return intervals_.at(comp).poset;
}

BinaryRelation McSul::mcsul_relation() const {
  if (m() < 2) throw std::invalid_argument("factored structure needs m >= 2");
  BinaryRelation rel;
  // reflection pairs: exact inside the factorable part
  for (const IntVec& r1 : horiz_.th_roots) {
    for (const IntVec& r2 : horiz_.th_roots) {
      if (r1 == r2) continue;
      std::size_t c1 = horiz_.component_of(r1), c2 = horiz_.component_of(r2);
      if (c1 != c2) {
        rel.add(th_letter(r1), th_letter(r2));
      } else if (interval_prefix(c1, {th_letter(r1), th_letter(r2)})) {
        rel.add(th_letter(r1), th_letter(r2));
      }
    }
  }
  // pairs with factored translations, straight from the closed form
  for (std::size_t i = 0; i < m(); ++i) {
    std::size_t ri = horiz_.rank_of_component(i);
    for (std::size_t p = 0; p < ri; ++p) {
      const IntVec& beta = horiz_.cycles[i][p];
      Letter f_beta = f_of_xi(beta).letter;
      // cross-component: everything is compatible
      for (std::size_t j = 0; j < m(); ++j) {
        if (j == i) continue;
        for (std::size_t g = 0; g < horiz_.rank_of_component(j); ++g) {
          const IntVec& gamma = horiz_.cycles[j][g];
          rel.add(f_beta, f_of_xi(gamma).letter);
        }
        for (const IntVec& r : horiz_.th_roots)
          if (horiz_.component_of(r) == j) {
            rel.add(f_beta, th_letter(r));
            rel.add(th_letter(r), f_beta);
          }
      }
      // same component against t_{beta,k}
      for (std::size_t k = 1; k < ri; ++k) {
        Letter t_bk = th_letter(horiz_.composite(i, p, k));
        for (std::size_t g = 0; g < ri; ++g) {
          const IntVec& gamma = horiz_.cycles[i][g];
          Letter f_gamma = f_of_xi(gamma).letter;
          bool gamma_in_c1_to_ck = false, gamma_in_c0_to_ckm1 = false;
          for (std::size_t t = 1; t <= k; ++t)
            if (g == (p + t) % ri) gamma_in_c1_to_ck = true;
          for (std::size_t t = 0; t < k; ++t)
            if (g == (p + t) % ri) gamma_in_c0_to_ckm1 = true;
          if (!gamma_in_c1_to_ck) rel.add(f_gamma, t_bk);
          if (!gamma_in_c0_to_ckm1) rel.add(t_bk, f_gamma);
        }
      }
    }
  }
  return rel;
}

ChainSystem McSul::build_ccf() const {
  if (m() < 2) throw std::invalid_argument("factored structure needs m >= 2");
  ChainSystem acc =
      ChainSystem::from_words(factorable_interval(0).maximal_chain_words());
  for (std::size_t i = 1; i < m(); ++i)
    acc = shuffle(acc, ChainSystem::from_words(
                           factorable_interval(i).maximal_chain_words()));
  return acc;
}

GoodBijReport McSul::verify_good_bij() const {
  if (m() < 2) throw std::invalid_argument("factored structure needs m >= 2");
  GoodBijReport rep;
  rep.component_association_ok = true;
  for (const auto& [beta, fi] : xi_to_f_) {
    const FactoredTranslation& f = f_letters_[fi];
    if (f.component != horiz_.component_of(beta)) rep.component_association_ok = false;
    Mat t = datum_.reflection_of_root(beta).transpose();
    if (f.element * t == t * f.element) rep.component_association_ok = false;
  }
  for (std::size_t i = 0; i < m(); ++i) {
    std::size_t ri = horiz_.rank_of_component(i);
    for (std::size_t p = 0; p < ri; ++p) {
      const IntVec& beta = horiz_.cycles[i][p];
      for (std::size_t k = 1; k < ri; ++k) {
        Letter t_bk = th_letter(horiz_.composite(i, p, k));
        for (std::size_t g = 0; g < ri; ++g) {
          const IntVec& gamma = horiz_.cycles[i][g];
          Letter f_gamma = f_of_xi(gamma).letter;
          GoodBijCase cs;
          cs.beta = beta;
          cs.gamma = gamma;
          cs.k = k;
          cs.ft_interval = interval_prefix(i, {f_gamma, t_bk});
          cs.tf_interval = interval_prefix(i, {t_bk, f_gamma});
          cs.ft_closed = true;
          for (std::size_t t = 1; t <= k; ++t)
            if (g == (p + t) % ri) cs.ft_closed = false;
          cs.tf_closed = true;
          for (std::size_t t = 0; t < k; ++t)
            if (g == (p + t) % ri) cs.tf_closed = false;
          ++rep.cases;
          if (!cs.pass()) rep.failures.push_back(cs);
        }
      }
    }
  }
  return rep;
}

Ternary McSul::reflections_compatible(const IntVec& r1, const IntVec& r2,
                                      std::size_t search_cap) const {
  if (r1 == r2) return Ternary::no;
  bool h1 = horiz_.component_by_root.count(r1) != 0;
  bool h2 = horiz_.component_by_root.count(r2) != 0;
  if (h1 && h2 && m() >= 2) {
    // horizontal pairs are decided exactly inside the factorable part
    std::size_t c1 = horiz_.component_of(r1), c2 = horiz_.component_of(r2);
    if (c1 != c2) return Ternary::yes;
    return interval_prefix(c1, {th_letter(r1), th_letter(r2)}) ? Ternary::yes
                                                               : Ternary::no;
  }
  // bounded search through the Hurwitz orbit of the defining word
  RootWord start;
  for (std::size_t i : datum_.cox_word()) {
    IntVec alpha(datum_.rank(), 0);
    alpha[i] = 1;
    start.push_back(alpha);
  }
  std::unordered_set<std::string> seen;
  std::queue<RootWord> frontier;
  auto word_key = [](const RootWord& w) {
    std::string s;
    for (const IntVec& v : w) s += root_str(v) + "|";
    return s;
  };
  seen.insert(word_key(start));
  frontier.push(start);
  while (!frontier.empty() && seen.size() < search_cap) {
    RootWord w = frontier.front();
    frontier.pop();
    if (w[0] == r1 && w[1] == r2) return Ternary::yes;
    for (std::size_t i = 0; i + 1 < w.size(); ++i) {
      RootWord fwd = w;
      fwd[i] = reflect_root(datum_, w[i], w[i + 1]);
      fwd[i + 1] = w[i];
      RootWord bwd = w;
      bwd[i] = w[i + 1];
      bwd[i + 1] = reflect_root(datum_, w[i + 1], w[i]);
      for (RootWord* cand : {&fwd, &bwd})
        if (seen.insert(word_key(*cand)).second) frontier.push(*cand);
    }
  }
  return Ternary::unknown;
}

}  // namespace ncchain
