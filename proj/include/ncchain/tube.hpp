#pragma once

#include <map>
#include <string>
#include <vector>

#include "ncchain/affine_mcsul.hpp"
#include "ncchain/chain_system.hpp"

namespace ncchain {

// Indecomposable of quasi-length k whose quasi-top sits at position pos
// of the tube's cyclic order.  k = rank marks the non-exceptional brick.
struct TubeLetter {
  std::size_t tube = 0;
  std::size_t pos = 0;
  std::size_t k = 1;
  bool operator<(const TubeLetter& o) const {
    return std::tie(tube, pos, k) < std::tie(o.tube, o.pos, o.k);
  }
  bool operator==(const TubeLetter& o) const {
    return tube == o.tube && pos == o.pos && k == o.k;
  }
};

// Combinatorial model of the non-homogeneous regular modules: one cyclic
// index set per tube, the AR shift acting as pos -> pos+1.  Works for
// abstract tubes (just ranks) and for the tubes attached to an affine
// datum (cyclic order = the c-cycles on Xi).
class TubeSystem {
 public:
  explicit TubeSystem(std::vector<std::size_t> ranks);
  static TubeSystem from_horizontal(const HorizontalData& h);

  std::size_t tubes() const { return ranks_.size(); }
  std::size_t rank(std::size_t tube) const { return ranks_[tube]; }
  const std::vector<std::size_t>& ranks() const { return ranks_; }

  Letter letter(const TubeLetter& l) const;
  TubeLetter parse_letter(const Letter& l) const;
  std::vector<TubeLetter> alphabet() const;
  std::vector<TubeLetter> tube_alphabet(std::size_t tube) const;

  bool is_brick(const TubeLetter& x) const { return x.k <= ranks_[x.tube]; }
  bool is_exceptional(const TubeLetter& x) const { return x.k < ranks_[x.tube]; }

  bool hom_nonzero(const TubeLetter& x, const TubeLetter& y) const;
  bool ext_nonzero(const TubeLetter& x, const TubeLetter& y) const;
  // (x, y) is a two-term brick sequence
  bool sequence_pair(const TubeLetter& x, const TubeLetter& y) const;

  BinaryRelation b_rpe() const;
  ChainSystem c_rpe() const;
  ChainSystem tube_chain_system(std::size_t tube) const;

 private:
  std::vector<std::size_t> ranks_;
};

// P(C_T) for a single abstract tube.
LabeledPoset tube_poset(std::size_t rank);

// the two closed-form vanishing statements for pairs against the
// non-exceptional bricks, swept over all (beta, gamma, k)
bool hom_ext_vanishing_closed_forms_hold(const TubeSystem& ts);

// exceptional (beta,k) -> reflection of the segment root, F -> factored
// translation; requires ts = TubeSystem::from_horizontal(ms.horizontal()).
std::map<Letter, Letter> omega_map(const TubeSystem& ts, const McSul& ms);

struct OmegaReport {
  bool letter_bijection = false;
  bool relation_match = false;
  bool words_match = false;
  std::size_t rpe_words = 0;
  std::size_t ccf_words = 0;
  std::string detail;
  bool pass() const { return letter_bijection && relation_match && words_match; }
};

OmegaReport verify_omega_iso(const TubeSystem& ts, const McSul& ms);

}  // namespace ncchain
