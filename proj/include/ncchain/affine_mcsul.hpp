#pragma once

#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "ncchain/chain_system.hpp"
#include "ncchain/labeled_poset.hpp"
#include "ncchain/root_datum.hpp"

namespace ncchain {

enum class Ternary { yes, no, unknown };

// Xi^c with its c-cycles, one cycle per component of the horizontal root
// system, plus the full set of roots of horizontal reflections with
// non-full support.
struct HorizontalData {
  std::vector<IntVec> th_roots;             // sorted
  std::vector<std::vector<IntVec>> cycles;  // Xi^c split by component, in c-order
  std::map<IntVec, std::size_t> component_by_root;
  std::map<IntVec, std::pair<std::size_t, std::size_t>> xi_position;
  std::size_t m() const { return cycles.size(); }
  std::size_t xi_size() const;
  std::size_t rank_of_component(std::size_t i) const { return cycles[i].size(); }
  // component of any T_H root (by K-pairing with the cycles)
  std::size_t component_of(const IntVec& root) const;
  // position of a Xi root inside its cycle; throws if not a Xi root
  std::pair<std::size_t, std::size_t> locate(const IntVec& xi_root) const;
  // beta_(k) = beta + c(beta) + ... + c^{k-1}(beta)
  IntVec composite(std::size_t comp, std::size_t pos, std::size_t k) const;
};

struct FactoredTranslation {
  std::size_t component = 0;
  RatVec mu;       // translation vector in the dual basis
  Mat element;     // I + mu * delta^T
  Letter letter;
};

struct IntervalTranslation {
  Mat element;               // acting on V*
  RatVec mu;
  std::vector<IntVec> hword;            // reduced T-word for w^{-1} c
  std::vector<std::size_t> factor_ids;  // indices into f_letters()
};

struct GoodBijCase {
  IntVec beta, gamma;
  std::size_t k = 0;
  bool ft_interval = false, ft_closed = false;
  bool tf_interval = false, tf_closed = false;
  bool pass() const { return ft_interval == ft_closed && tf_interval == tf_closed; }
};

struct GoodBijReport {
  std::size_t cases = 0;
  std::vector<GoodBijCase> failures;
  bool component_association_ok = false;
  bool pass() const { return failures.empty() && component_association_ok; }
};

// The factored-translation side of an affine datum: horizontal data, the
// translations of the interval and their factors, the per-component
// intervals in the factorable group, the compatibility relation, and the
// finite chain system of reduced words over reflections and factors.
class McSul {
 public:
  explicit McSul(RootDatum datum, std::vector<Rat> q = {});

  const RootDatum& datum() const { return datum_; }
  const HorizontalData& horizontal() const { return horiz_; }
  const std::vector<Rat>& q() const { return q_; }
  std::size_t m() const { return horiz_.m(); }

  const std::vector<IntervalTranslation>& translations() const { return translations_; }
  const std::vector<FactoredTranslation>& f_letters() const { return f_letters_; }

  // the computed bijection beta -> f_beta on Xi^c
  const FactoredTranslation& f_of_xi(const IntVec& xi_root) const;

  Letter th_letter(const IntVec& root) const;   // "t(...)"
  // weights: 1 per reflection, 2/m per factored translation
  WeightMap letter_weights() const;

  const LabeledPoset& factorable_interval(std::size_t comp) const;

  // two-letter compatibility on the T_H u F part of the alphabet
  BinaryRelation mcsul_relation() const;

  // is the concatenation of these letters a prefix of a reduced word for
  // the component's Coxeter factor?
  bool interval_prefix(std::size_t comp, const std::vector<Letter>& letters) const;

  ChainSystem build_ccf() const;

  GoodBijReport verify_good_bij() const;

  // 1 < t t' <= c for reflections, decided exactly inside the factorable
  // part and by bounded Hurwitz search when a vertical root is involved.
  Ternary reflections_compatible(const IntVec& r1, const IntVec& r2,
                                 std::size_t search_cap = 200000) const;

 private:
  struct IntervalData {
    Mat c_i;
    Int budget = 0;  // weights scaled by m
    std::vector<std::pair<Letter, Mat>> letters;
    std::unordered_map<std::string, Int> fwd;
    std::unordered_map<std::string, Mat> elements;
    LabeledPoset poset{{}, {}};
  };

  void compute_horizontal();
  void compute_translations();
  void compute_intervals();
  void compute_bijection();
  Int scaled_weight(const Letter& l) const;

  RootDatum datum_;
  std::vector<Rat> q_;
  HorizontalData horiz_;
  Mat c_dual_;  // c acting on V*
  std::vector<IntervalTranslation> translations_;
  std::vector<FactoredTranslation> f_letters_;
  std::map<IntVec, std::size_t> xi_to_f_;  // the bijection
  std::vector<IntervalData> intervals_;
};

// dual-space action of a V-matrix
Mat dual_action(const Mat& v_matrix);

// if w = I + mu delta^T, returns mu
std::optional<RatVec> translation_vector(const Mat& w, const IntVec& delta);

}  // namespace ncchain
