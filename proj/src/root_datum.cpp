#include "ncchain/root_datum.hpp"

#include <algorithm>
#include <queue>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

namespace ncchain {

void CartanMatrix::validate() const {
  if (n == 0 || a.size() != n || d.size() != n)
    throw std::invalid_argument("Cartan matrix: bad shape");
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i].size() != n) throw std::invalid_argument("Cartan matrix: bad shape");
    if (a[i][i] != 2) throw std::invalid_argument("Cartan matrix: diagonal must be 2");
    if (d[i] <= Rat(0)) throw std::invalid_argument("symmetrizer must be positive");
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      if (a[i][j] > 0)
        throw std::invalid_argument("Cartan matrix: positive off-diagonal entry");
      if ((a[i][j] == 0) != (a[j][i] == 0))
        throw std::invalid_argument("Cartan matrix: zero pattern not symmetric");
      if (d[i] * a[i][j] != d[j] * a[j][i])
        throw std::invalid_argument("symmetrizer does not symmetrize");
    }
  }
}

Mat CartanMatrix::symmetrized() const {
  Mat s(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) s(i, j) = d[i] * Rat(a[i][j]);
  return s;
}

namespace {

// leading principal minors, sizes 1..k of the top-left k x k block
std::vector<Rat> leading_minors(const Mat& s, std::size_t k) {
  std::vector<Rat> out;
  for (std::size_t m = 1; m <= k; ++m) {
    Mat sub(m, m);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) sub(i, j) = s(i, j);
    out.push_back(sub.det());
  }
  return out;
}

bool positive_definite(const Mat& s) {
  auto minors = leading_minors(s, s.rows());
  for (const Rat& m : minors)
    if (m <= Rat(0)) return false;
  return true;
}

Mat delete_row_col(const Mat& s, std::size_t k) {
  Mat out(s.rows() - 1, s.cols() - 1);
  for (std::size_t i = 0, oi = 0; i < s.rows(); ++i) {
    if (i == k) continue;
    for (std::size_t j = 0, oj = 0; j < s.cols(); ++j) {
      if (j == k) continue;
      out(oi, oj) = s(i, j);
      ++oj;
    }
    ++oi;
  }
  return out;
}

}  // namespace

CartanType classify(const CartanMatrix& cartan) {
  cartan.validate();
  Mat s = cartan.symmetrized();
  if (positive_definite(s)) return CartanType::finite;
  if (s.det() != Rat(0)) return CartanType::other;
  for (std::size_t k = 0; k < cartan.n; ++k)
    if (!positive_definite(delete_row_col(s, k))) return CartanType::other;
  return CartanType::affine;
}

RootDatum::RootDatum(CartanMatrix cartan, std::vector<std::size_t> cox_word)
    : cartan_(std::move(cartan)), cox_word_(std::move(cox_word)) {
  cartan_.validate();
  const std::size_t n = cartan_.n;
  {
    std::vector<char> seen(n, 0);
    if (cox_word_.size() != n) throw std::invalid_argument("cox word must have length n");
    for (std::size_t i : cox_word_) {
      if (i >= n || seen[i]) throw std::invalid_argument("cox word must be a permutation");
      seen[i] = 1;
    }
  }
  type_ = classify(cartan_);

  simple_refl_.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    Mat m = Mat::identity(n);
    for (std::size_t j = 0; j < n; ++j)
      m(i, j) = (i == j ? Rat(-1) : Rat(-cartan_.a[i][j]));
    simple_refl_.push_back(std::move(m));
  }
  c_matrix_ = Mat::identity(n);
  for (std::size_t i : cox_word_) c_matrix_ = c_matrix_ * simple_refl_[i];

  // E_c(alpha_i-check, alpha_j): 1 on the diagonal, a_ij when s_i comes
  // later than s_j in the defining word, 0 when earlier.
  std::vector<std::size_t> pos(n);
  for (std::size_t k = 0; k < n; ++k) pos[cox_word_[k]] = k;
  ec_coroot_root_ = Mat(n, n);
  ecinv_coroot_root_ = Mat(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) {
        ec_coroot_root_(i, j) = Rat(1);
        ecinv_coroot_root_(i, j) = Rat(1);
      } else {
        ec_coroot_root_(i, j) = pos[i] > pos[j] ? Rat(cartan_.a[i][j]) : Rat(0);
        ecinv_coroot_root_(i, j) = pos[i] < pos[j] ? Rat(cartan_.a[i][j]) : Rat(0);
      }
    }
  }

  if (type_ == CartanType::affine) {
    auto ker = cartan_.symmetrized().kernel();
    if (ker.size() != 1) throw std::runtime_error("affine kernel not 1-dimensional");
    IntVec d = primitive_direction(ker[0]);
    for (Int x : d)
      if (x <= 0) throw std::runtime_error("imaginary root not positive");
    delta_ = d;
  }
}

Rat RootDatum::k_form(const RatVec& x, const RatVec& y) const {
  Mat s = cartan_.symmetrized();
  Rat r(0);
  for (std::size_t i = 0; i < cartan_.n; ++i)
    for (std::size_t j = 0; j < cartan_.n; ++j) r += x[i] * s(i, j) * y[j];
  return r;
}

Rat RootDatum::k_form(const IntVec& x, const IntVec& y) const {
  return k_form(RatVec(x.begin(), x.end()), RatVec(y.begin(), y.end()));
}

Rat RootDatum::ec(const IntVec& x, const IntVec& y) const {
  Rat r(0);
  for (std::size_t i = 0; i < cartan_.n; ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < cartan_.n; ++j)
      r += Rat(x[i]) * cartan_.d[i] * ec_coroot_root_(i, j) * Rat(y[j]);
  }
  return r;
}

Rat RootDatum::ec_inv(const IntVec& x, const IntVec& y) const {
  // reversing the defining word swaps the follows/precedes cases
  Rat r(0);
  for (std::size_t i = 0; i < cartan_.n; ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < cartan_.n; ++j)
      r += Rat(x[i]) * cartan_.d[i] * ecinv_coroot_root_(i, j) * Rat(y[j]);
  }
  return r;
}

Rat RootDatum::ec_coroot(const IntVec& beta, const IntVec& gamma) const {
  Rat norm = k_form(beta, beta);
  if (norm == Rat(0)) throw std::invalid_argument("co-root of an isotropic vector");
  return Rat(2) / norm * ec(beta, gamma);
}

Mat RootDatum::reflection_of_root(const IntVec& beta) const {
  Rat norm = k_form(beta, beta);
  if (norm == Rat(0))
    throw std::invalid_argument("reflection undefined: K(beta,beta) = 0");
  const std::size_t n = cartan_.n;
  Mat s = cartan_.symmetrized();
  RatVec bs(n, Rat(0));  // row vector beta^T S
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) bs[j] += Rat(beta[i]) * s(i, j);
  Mat m = Mat::identity(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      m(i, j) -= Rat(2) / norm * Rat(beta[i]) * bs[j];
  return m;
}

std::vector<IntVec> RootDatum::positive_real_roots_bounded(const IntVec& bound) const {
  if (type_ == CartanType::other)
    throw std::invalid_argument("root enumeration needs finite or affine type");
  if (bound.size() != cartan_.n) throw std::invalid_argument("bad bound size");
  auto in_box = [&](const IntVec& v) {
    for (std::size_t i = 0; i < v.size(); ++i)
      if (v[i] < 0 || v[i] > bound[i]) return false;
    return true;
  };
  std::unordered_set<IntVec> seen;
  std::queue<IntVec> frontier;
  for (std::size_t i = 0; i < cartan_.n; ++i) {
    IntVec alpha(cartan_.n, 0);
    alpha[i] = 1;
    if (in_box(alpha) && seen.insert(alpha).second) frontier.push(alpha);
  }
  while (!frontier.empty()) {
    IntVec beta = frontier.front();
    frontier.pop();
    for (std::size_t i = 0; i < cartan_.n; ++i) {
      IntVec gamma = simple_refl_[i].apply_int(beta);
      bool positive = false;
      for (Int x : gamma)
        if (x > 0) positive = true;
      if (!positive) continue;
      if (!in_box(gamma)) continue;
      if (seen.insert(gamma).second) frontier.push(gamma);
    }
  }
  std::vector<IntVec> out(seen.begin(), seen.end());
  std::sort(out.begin(), out.end());
  return out;
}

const IntVec& RootDatum::delta() const {
  if (!delta_) throw std::invalid_argument("imaginary root needs affine type");
  return *delta_;
}

bool RootDatum::is_horizontal(const IntVec& beta) const {
  if (type_ != CartanType::affine)
    throw std::invalid_argument("horizontality needs affine type");
  return ec_inv(delta(), beta) == Rat(0);
}

namespace {

CartanMatrix make_cartan(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges,
                         const std::vector<std::tuple<std::size_t, std::size_t, Int, Int>>& special = {}) {
  CartanMatrix c;
  c.n = n;
  c.a.assign(n, IntVec(n, 0));
  for (std::size_t i = 0; i < n; ++i) c.a[i][i] = 2;
  for (auto [i, j] : edges) {
    c.a[i][j] = -1;
    c.a[j][i] = -1;
  }
  for (auto [i, j, aij, aji] : special) {
    c.a[i][j] = aij;
    c.a[j][i] = aji;
  }
  // solve for a positive rational symmetrizer by propagating along edges
  c.d.assign(n, Rat(0));
  for (std::size_t start = 0; start < n; ++start) {
    if (c.d[start] != Rat(0)) continue;
    c.d[start] = Rat(1);
    std::queue<std::size_t> q;
    q.push(start);
    while (!q.empty()) {
      std::size_t i = q.front();
      q.pop();
      for (std::size_t j = 0; j < n; ++j) {
        if (i == j || c.a[i][j] == 0) continue;
        Rat need = c.d[i] * Rat(c.a[i][j]) / Rat(c.a[j][i]);
        if (c.d[j] == Rat(0)) {
          c.d[j] = need;
          q.push(j);
        } else if (c.d[j] != need) {
          throw std::invalid_argument("matrix not symmetrizable");
        }
      }
    }
  }
  // clear denominators
  Int lcm = 1;
  for (const Rat& x : c.d) {
    Int den = x.denominator();
    Int g = std::__gcd(lcm, den);
    lcm = lcm / g * den;
  }
  for (Rat& x : c.d) x *= Rat(lcm);
  c.validate();
  return c;
}

struct TypeSpec {
  char family = 0;
  bool affine = false;
  std::size_t index = 0;
  std::vector<Int> outer;  // type A~ orientation
};

TypeSpec parse_type(const std::string& s) {
  TypeSpec t;
  std::size_t p = 0;
  if (p >= s.size()) throw std::invalid_argument("empty type string");
  t.family = s[p++];
  if (p < s.size() && s[p] == '~') {
    t.affine = true;
    ++p;
  }
  std::size_t q = p;
  while (q < s.size() && isdigit(static_cast<unsigned char>(s[q]))) ++q;
  if (q == p) throw std::invalid_argument("type string needs a rank: " + s);
  t.index = std::stoul(s.substr(p, q - p));
  if (q < s.size()) {
    std::string rest = s.substr(q);
    if (rest.rfind(":outer=", 0) != 0)
      throw std::invalid_argument("bad type suffix: " + rest);
    std::stringstream ss(rest.substr(7));
    std::string item;
    while (std::getline(ss, item, ',')) t.outer.push_back(std::stoll(item));
    if (t.outer.empty()) throw std::invalid_argument("empty outer set");
  }
  return t;
}

// Window form of a permutation of Z with pi(i+n) = pi(i)+n; only used to
// pick the defining word matching an annulus orientation.
struct MiniAffinePerm {
  std::size_t n;
  std::vector<Int> window;  // images of 1..n
  Int eval(Int i) const {
    Int r = ((i - 1) % static_cast<Int>(n) + static_cast<Int>(n)) % static_cast<Int>(n) + 1;
    Int q = (i - r) / static_cast<Int>(n);
    return window[r - 1] + q * static_cast<Int>(n);
  }
  MiniAffinePerm compose(const MiniAffinePerm& o) const {  // this after o
    MiniAffinePerm r{n, std::vector<Int>(n)};
    for (std::size_t i = 1; i <= n; ++i) r.window[i - 1] = eval(o.window[i - 1]);
    return r;
  }
};

std::vector<std::size_t> coxeter_word_for_orientation(std::size_t n,
                                                      std::vector<Int> outer) {
  std::sort(outer.begin(), outer.end());
  std::vector<Int> inner;
  for (Int i = 1; i <= static_cast<Int>(n); ++i)
    if (!std::binary_search(outer.begin(), outer.end(), i)) inner.push_back(i);
  for (Int o : outer)
    if (o < 1 || o > static_cast<Int>(n))
      throw std::invalid_argument("outer point out of range");
  if (outer.empty() || inner.empty())
    throw std::invalid_argument("orientation needs nonempty outer and inner sets");

  MiniAffinePerm target{n, std::vector<Int>(n)};
  for (std::size_t i = 0; i < outer.size(); ++i)
    target.window[outer[i] - 1] =
        (i + 1 < outer.size()) ? outer[i + 1] : outer[0] + static_cast<Int>(n);
  std::sort(inner.rbegin(), inner.rend());
  for (std::size_t i = 0; i < inner.size(); ++i)
    target.window[inner[i] - 1] =
        (i + 1 < inner.size()) ? inner[i + 1] : inner[0] - static_cast<Int>(n);

  // s_i = (i, i+1)_n
  std::vector<MiniAffinePerm> gens;
  for (std::size_t i = 1; i <= n; ++i) {
    MiniAffinePerm s{n, std::vector<Int>(n)};
    for (std::size_t j = 1; j <= n; ++j) s.window[j - 1] = static_cast<Int>(j);
    if (i < n) {
      s.window[i - 1] = static_cast<Int>(i + 1);
      s.window[i] = static_cast<Int>(i);
    } else {
      s.window[n - 1] = static_cast<Int>(n + 1);
      s.window[0] = 0;  // pi(1) = 0 since pi(n+1) = n+1-n ... (n,n+1) swaps
    }
    gens.push_back(std::move(s));
  }

  std::vector<std::size_t> word(n);
  for (std::size_t i = 0; i < n; ++i) word[i] = i;
  std::sort(word.begin(), word.end());
  do {
    MiniAffinePerm prod{n, std::vector<Int>(n)};
    for (std::size_t j = 1; j <= n; ++j) prod.window[j - 1] = static_cast<Int>(j);
    for (std::size_t i : word) prod = prod.compose(gens[i]);
    if (prod.window == target.window) return word;
  } while (std::next_permutation(word.begin(), word.end()));
  throw std::invalid_argument("no Coxeter word realizes this orientation");
}

}  // namespace

CartanMatrix cartan_from_type(const std::string& type_string) {
  TypeSpec t = parse_type(type_string);
  using E = std::vector<std::pair<std::size_t, std::size_t>>;
  std::size_t k = t.index;
  if (!t.affine) {
    switch (t.family) {
      case 'A': {
        if (k < 1) throw std::invalid_argument("A rank >= 1");
        E e;
        for (std::size_t i = 0; i + 1 < k; ++i) e.push_back({i, i + 1});
        return make_cartan(k, e);
      }
      case 'B':
      case 'C': {
        if (k < 2) throw std::invalid_argument("B rank >= 2");
        E e;
        for (std::size_t i = 0; i + 2 < k; ++i) e.push_back({i, i + 1});
        return make_cartan(k, e, {{k - 2, k - 1, -2, -1}});
      }
      case 'D': {
        if (k < 3) throw std::invalid_argument("D rank >= 3");
        E e;
        for (std::size_t i = 0; i + 2 < k; ++i) e.push_back({i, i + 1});
        e.push_back({k - 3, k - 1});
        return make_cartan(k, e);
      }
      case 'E': {
        if (k < 6 || k > 8) throw std::invalid_argument("E rank 6..8");
        E e;
        for (std::size_t i = 0; i + 2 < k; ++i) e.push_back({i, i + 1});
        e.push_back({2, k - 1});
        return make_cartan(k, e);
      }
      case 'F': {
        if (k != 4) throw std::invalid_argument("F rank 4");
        return make_cartan(4, {{0, 1}, {2, 3}}, {{1, 2, -1, -2}});
      }
      case 'G': {
        if (k != 2) throw std::invalid_argument("G rank 2");
        return make_cartan(2, {}, {{0, 1, -1, -3}});
      }
      default:
        throw std::invalid_argument("unknown family");
    }
  }
  switch (t.family) {
    case 'A': {
      if (k == 1) return make_cartan(2, {}, {{0, 1, -2, -2}});
      E e;
      for (std::size_t i = 0; i + 1 <= k; ++i) e.push_back({i, i + 1});
      e.push_back({0, k});
      return make_cartan(k + 1, e);
    }
    case 'B': {
      if (k < 3) throw std::invalid_argument("B~ rank >= 3");
      E e{{0, 2}, {1, 2}};
      for (std::size_t i = 2; i + 2 < k; ++i) e.push_back({i, i + 1});
      return make_cartan(k + 1, e, {{k - 1, k, -2, -1}});
    }
    case 'D': {
      if (k < 4) throw std::invalid_argument("D~ rank >= 4");
      E e{{0, 2}, {1, 2}};
      for (std::size_t i = 2; i + 2 < k; ++i) e.push_back({i, i + 1});
      e.push_back({k - 2, k});
      return make_cartan(k + 1, e);
    }
    case 'E': {
      if (k == 6) {
        // legs of length 2,2,2 around node 2
        E e{{0, 1}, {1, 2}, {2, 3}, {3, 4}, {2, 5}, {5, 6}};
        return make_cartan(7, e);
      }
      if (k == 7) {
        E e{{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {3, 7}};
        return make_cartan(8, e);
      }
      if (k == 8) {
        E e{{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7}, {5, 8}};
        return make_cartan(9, e);
      }
      throw std::invalid_argument("E~ rank 6..8");
    }
    case 'F': {
      if (k != 4) throw std::invalid_argument("F~ rank 4");
      return make_cartan(5, {{0, 1}, {1, 2}, {3, 4}}, {{2, 3, -1, -2}});
    }
    case 'G': {
      if (k != 2) throw std::invalid_argument("G~ rank 2");
      return make_cartan(3, {{0, 1}}, {{1, 2, -1, -3}});
    }
    default:
      throw std::invalid_argument("unknown family");
  }
}

RootDatum datum_from_type(const std::string& type_string) {
  TypeSpec t = parse_type(type_string);
  CartanMatrix cm = cartan_from_type(type_string);
  std::vector<std::size_t> word(cm.n);
  for (std::size_t i = 0; i < cm.n; ++i) word[i] = i;
  if (t.family == 'A' && t.affine && !t.outer.empty())
    word = coxeter_word_for_orientation(cm.n, t.outer);
  return RootDatum(std::move(cm), std::move(word));
}

RootDatum datum_from_text(const std::string& text) {
  std::istringstream in(text);
  std::size_t n = 0;
  if (!(in >> n) || n == 0) throw std::invalid_argument("bad Cartan file: rank");
  CartanMatrix cm;
  cm.n = n;
  cm.a.assign(n, IntVec(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (!(in >> cm.a[i][j])) throw std::invalid_argument("bad Cartan file: entries");
  cm.d.assign(n, Rat(1));
  std::vector<std::size_t> word(n);
  for (std::size_t i = 0; i < n; ++i) word[i] = i;
  std::string key;
  while (in >> key) {
    if (key == "d:") {
      std::string tok;
      for (std::size_t i = 0; i < n; ++i) {
        if (!(in >> tok)) throw std::invalid_argument("bad Cartan file: d line");
        cm.d[i] = parse_rat(tok);
      }
    } else if (key == "cox:") {
      for (std::size_t i = 0; i < n; ++i) {
        std::size_t x;
        if (!(in >> x) || x < 1 || x > n)
          throw std::invalid_argument("bad Cartan file: cox line");
        word[i] = x - 1;
      }
    } else {
      throw std::invalid_argument("bad Cartan file: unknown line " + key);
    }
  }
  // if no symmetrizer was given, try to find one
  try {
    cm.validate();
  } catch (const std::invalid_argument&) {
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    std::vector<std::tuple<std::size_t, std::size_t, Int, Int>> special;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (cm.a[i][j] != 0) special.push_back({i, j, cm.a[i][j], cm.a[j][i]});
    cm = make_cartan(n, edges, special);
  }
  return RootDatum(std::move(cm), std::move(word));
}

std::string root_str(const IntVec& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(v[i]);
  }
  return s + ")";
}

}  // namespace ncchain
