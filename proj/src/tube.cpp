#include "ncchain/tube.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "ncchain/finite_nc.hpp"

namespace ncchain {

TubeSystem::TubeSystem(std::vector<std::size_t> ranks) : ranks_(std::move(ranks)) {
  for (std::size_t r : ranks_)
    if (r < 1) throw std::invalid_argument("tube rank must be >= 1");
}

TubeSystem TubeSystem::from_horizontal(const HorizontalData& h) {
  std::vector<std::size_t> ranks;
  for (const auto& cyc : h.cycles) ranks.push_back(cyc.size());
  return TubeSystem(std::move(ranks));
}

Letter TubeSystem::letter(const TubeLetter& l) const {
  return Letter("R[" + std::to_string(l.tube + 1) + ":" + std::to_string(l.pos) +
                "," + std::to_string(l.k) + "]");
}

TubeLetter TubeSystem::parse_letter(const Letter& l) const {
  const std::string& s = l.name();
  TubeLetter out;
  char lb, colon, comma, rb;
  std::istringstream in(s.substr(1));
  long long tube, pos, k;
  if (!(in >> lb >> tube >> colon >> pos >> comma >> k >> rb) || lb != '[' ||
      colon != ':' || comma != ',' || rb != ']' || s[0] != 'R')
    throw std::invalid_argument("not a tube letter: " + s);
  out.tube = static_cast<std::size_t>(tube - 1);
  out.pos = static_cast<std::size_t>(pos);
  out.k = static_cast<std::size_t>(k);
  return out;
}

std::vector<TubeLetter> TubeSystem::alphabet() const {
  std::vector<TubeLetter> out;
  for (std::size_t t = 0; t < tubes(); ++t) {
    auto part = tube_alphabet(t);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

std::vector<TubeLetter> TubeSystem::tube_alphabet(std::size_t tube) const {
  std::vector<TubeLetter> out;
  for (std::size_t p = 0; p < ranks_[tube]; ++p)
    for (std::size_t k = 1; k <= ranks_[tube]; ++k) out.push_back({tube, p, k});
  return out;
}

bool TubeSystem::hom_nonzero(const TubeLetter& x, const TubeLetter& y) const {
  if (x.tube != y.tube) return false;
  std::size_t r = ranks_[x.tube];
  // a map factors through a common segment: quotient of x with quasi-top
  // x.pos equal to a submodule of y with quasi-socle at y's socle
  for (std::size_t j = 1; j <= std::min(x.k, y.k); ++j)
    if (x.pos == (y.pos + y.k - j) % r) return true;
  return false;
}

bool TubeSystem::ext_nonzero(const TubeLetter& x, const TubeLetter& y) const {
  if (x.tube != y.tube) return false;
  std::size_t r = ranks_[x.tube];
  TubeLetter tau_x{x.tube, (x.pos + 1) % r, x.k};
  return hom_nonzero(y, tau_x);
}

bool TubeSystem::sequence_pair(const TubeLetter& x, const TubeLetter& y) const {
  return !hom_nonzero(y, x) && !ext_nonzero(y, x);
}

BinaryRelation TubeSystem::b_rpe() const {
  BinaryRelation rel;
  auto letters = alphabet();
  for (const TubeLetter& x : letters)
    for (const TubeLetter& y : letters)
      if (!(x == y) && sequence_pair(x, y)) rel.add(letter(x), letter(y));
  return rel;
}

ChainSystem TubeSystem::c_rpe() const {
  BinaryRelation rel = b_rpe();
  std::vector<Letter> letters;
  for (const TubeLetter& x : alphabet()) letters.push_back(letter(x));
  return maximal_b_sequences(rel, letters);
}

ChainSystem TubeSystem::tube_chain_system(std::size_t tube) const {
  BinaryRelation rel;
  auto letters = tube_alphabet(tube);
  for (const TubeLetter& x : letters)
    for (const TubeLetter& y : letters)
      if (!(x == y) && sequence_pair(x, y)) rel.add(letter(x), letter(y));
  std::vector<Letter> names;
  for (const TubeLetter& x : letters) names.push_back(letter(x));
  return maximal_b_sequences(rel, names);
}

LabeledPoset tube_poset(std::size_t rank) {
  if (rank < 1) throw std::invalid_argument("tube rank must be >= 1");
  if (rank > 6) throw std::invalid_argument("tube rank too large to enumerate");
  TubeSystem ts({rank});
  return build_poset(ts.tube_chain_system(0));
}

bool hom_ext_vanishing_closed_forms_hold(const TubeSystem& ts) {
  for (std::size_t t = 0; t < ts.tubes(); ++t) {
    std::size_t r = ts.rank(t);
    for (std::size_t p = 0; p < r; ++p) {
      for (std::size_t g = 0; g < r; ++g) {
        for (std::size_t k = 1; k <= r; ++k) {
          TubeLetter rbk{t, p, k};
          TubeLetter f_gamma{t, g, r};
          // gamma in {c^i beta : 0 <= i < k} ?
          bool in_0_to_km1 = false, in_1_to_k = false;
          for (std::size_t i = 0; i < k; ++i)
            if (g == (p + i) % r) in_0_to_km1 = true;
          for (std::size_t i = 1; i <= k; ++i)
            if (g == (p + i) % r) in_1_to_k = true;
          bool both_vanish_fg_to =
              !ts.hom_nonzero(f_gamma, rbk) && !ts.ext_nonzero(f_gamma, rbk);
          bool both_vanish_to_fg =
              !ts.hom_nonzero(rbk, f_gamma) && !ts.ext_nonzero(rbk, f_gamma);
          if (both_vanish_fg_to != !in_0_to_km1) return false;
          if (both_vanish_to_fg != !in_1_to_k) return false;
        }
      }
    }
  }
  return true;
}

std::map<Letter, Letter> omega_map(const TubeSystem& ts, const McSul& ms) {
  const HorizontalData& h = ms.horizontal();
  if (ts.tubes() != h.m()) throw std::invalid_argument("tube system mismatch");
  std::map<Letter, Letter> out;
  for (const TubeLetter& x : ts.alphabet()) {
    std::size_t r = ts.rank(x.tube);
    if (x.k < r) {
      IntVec root = h.composite(x.tube, x.pos, x.k);
      out[ts.letter(x)] = reflection_letter(root);
    } else {
      const IntVec& beta = h.cycles[x.tube][x.pos];
      out[ts.letter(x)] = ms.f_of_xi(beta).letter;
    }
  }
  return out;
}

OmegaReport verify_omega_iso(const TubeSystem& ts, const McSul& ms) {
  OmegaReport rep;
  auto omega = omega_map(ts, ms);
  {
    std::set<Letter> image;
    for (const auto& [a, b] : omega) image.insert(b);
    rep.letter_bijection = image.size() == omega.size();
  }
  BinaryRelation rhs = ms.mcsul_relation();
  rep.relation_match = true;
  auto letters = ts.alphabet();
  for (const TubeLetter& x : letters) {
    for (const TubeLetter& y : letters) {
      if (x == y) continue;
      bool in_lhs = ts.sequence_pair(x, y);
      bool in_rhs = rhs.contains(omega.at(ts.letter(x)), omega.at(ts.letter(y)));
      if (in_lhs != in_rhs) {
        rep.relation_match = false;
        rep.detail = "relation mismatch at (" + ts.letter(x).name() + ", " +
                     ts.letter(y).name() + ")";
      }
    }
  }
  ChainSystem rpe = ts.c_rpe();
  ChainSystem ccf = ms.build_ccf();
  rep.rpe_words = rpe.size();
  rep.ccf_words = ccf.size();
  rep.words_match = is_isomorphism(rpe, ccf, omega);
  return rep;
}

}  // namespace ncchain
