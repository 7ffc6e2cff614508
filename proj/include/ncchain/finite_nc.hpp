#pragma once

#include <string>
#include <vector>

#include "ncchain/chain_system.hpp"
#include "ncchain/labeled_poset.hpp"
#include "ncchain/root_datum.hpp"

namespace ncchain {

using RootWord = std::vector<IntVec>;  // T-word as positive roots

// Reflection-side computations for a finite-type datum: reflection
// length, absolute order, Hurwitz orbits and the noncrossing partition
// lattice.
class FiniteNc {
 public:
  explicit FiniteNc(RootDatum datum);

  const RootDatum& datum() const { return datum_; }
  const std::vector<IntVec>& positive_roots() const { return roots_; }

  Mat reflection(const IntVec& root) const;
  std::size_t reflection_length(const Mat& w) const;
  bool absolute_leq(const Mat& u, const Mat& w) const;

  // BFS closure of the braid moves; throws when the cap is exceeded.
  std::vector<RootWord> hurwitz_orbit(const RootWord& start,
                                      std::size_t cap = 2000000) const;

  RootWord defining_word() const;

  Letter letter_of_root(const IntVec& root) const;
  IntVec root_of_letter(const Letter& l) const;

  ChainSystem coxeter_chain_system() const;  // all reduced T-words for c
  LabeledPoset nc_lattice() const;

  struct WordCriteriaReport {
    std::size_t orbit_size = 0;
    std::size_t maximal_pairwise_count = 0;
    std::size_t triangular_basis_count = 0;
    bool braid_equals_maximal = false;
    bool braid_equals_triangular = false;
    bool orbit_words_are_triangular_bases = false;
    bool pass() const {
      return braid_equals_maximal && braid_equals_triangular &&
             orbit_words_are_triangular_bases;
    }
  };
  WordCriteriaReport verify_word_criteria() const;

 private:
  RootDatum datum_;
  std::vector<IntVec> roots_;
};

Letter reflection_letter(const IntVec& root);
IntVec root_of_reflection_letter(const Letter& l);

// Applies the reflection in beta to gamma, normalized to a positive root.
IntVec reflect_root(const RootDatum& datum, const IntVec& beta, const IntVec& gamma);

}  // namespace ncchain
