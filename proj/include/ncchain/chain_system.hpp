#pragma once

#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "ncchain/labeled_poset.hpp"
#include "ncchain/rational.hpp"
#include "ncchain/word.hpp"

namespace ncchain {

// A finite set of words over a finite alphabet, normalized so that the
// alphabet is exactly the set of occurring letters and the words are in
// canonical (length, lex) order.
class ChainSystem {
 public:
  ChainSystem() = default;
  static ChainSystem from_words(std::vector<Word> words);

  const std::vector<Word>& words() const { return words_; }
  const std::vector<Letter>& alphabet() const { return alphabet_; }
  bool contains(const Word& w) const { return word_set_.count(w) != 0; }
  bool empty() const { return words_.empty(); }
  std::size_t size() const { return words_.size(); }

  bool operator==(const ChainSystem& o) const { return words_ == o.words_; }

 private:
  std::vector<Word> words_;
  std::vector<Letter> alphabet_;
  std::unordered_set<Word, WordHash> word_set_;
};

struct BinaryRelation {
  std::set<std::pair<Letter, Letter>> pairs;
  bool contains(Letter a, Letter b) const { return pairs.count({a, b}) != 0; }
  void add(Letter a, Letter b) { pairs.insert({a, b}); }
  std::size_t size() const { return pairs.size(); }
};

struct AxiomReport {
  bool degenerate = false;   // empty word set
  bool finite_bound = false; // condition (i)
  bool convexity = false;    // condition (ii): class pairs complete or disjoint
  bool no_substitution = false;  // condition (iii)
  bool no_proper_extension = false;  // derived: px, pwx both words forces w empty
  std::size_t max_word_length = 0;
  std::string witness_convexity;
  std::string witness_no_substitution;
  std::string witness_no_proper_extension;
  bool pass() const {
    return !degenerate && finite_bound && convexity && no_substitution;
  }
};

AxiomReport check_axioms(const ChainSystem& c);

// Equivalence classes of prefixes (or postfixes) of c, each class sorted,
// classes sorted by canonical representative.  Throws if condition (ii)
// fails, with the witness in the message.
class AffixClasses {
 public:
  const std::vector<std::vector<Word>>& classes() const { return classes_; }
  std::size_t size() const { return classes_.size(); }
  std::size_t class_of(const Word& affix) const;
  const Word& representative(std::size_t cls) const { return classes_[cls][0]; }

 private:
  friend AffixClasses affix_classes_impl(const ChainSystem&, bool);
  std::vector<std::vector<Word>> classes_;
  std::unordered_map<Word, std::size_t, WordHash> index_;
};

AffixClasses prefix_classes(const ChainSystem& c);
AffixClasses postfix_classes(const ChainSystem& c);

// The edge-labeled poset of prefix classes under the prefix order.
// Element i of the result corresponds to class i of prefix_classes(c).
LabeledPoset build_poset(const ChainSystem& c);

// Reads a chain system off a labeled poset, after checking the two label
// conditions (same labels from the bottom meet, same labels from the top
// meet).  Violations throw with the two witness chains.
ChainSystem poset_to_chain_system(const LabeledPoset& p);

ChainSystem maximal_b_sequences(const BinaryRelation& b,
                                const std::vector<Letter>& alphabet);

ChainSystem shuffle(const ChainSystem& a, const ChainSystem& b);

bool is_isomorphism(const ChainSystem& a, const ChainSystem& b,
                    const std::map<Letter, Letter>& letter_map);

bool is_balanced(const ChainSystem& c);

// Words read on saturated chains from class x to class y in build_poset(c).
ChainSystem restriction(const ChainSystem& c, std::size_t x, std::size_t y);

bool has_restriction_property(const ChainSystem& c, std::string* witness = nullptr);

// Direct three-interval test of the group-like condition; exponential-ish,
// gated by an element bound.
bool is_group_like_direct(const ChainSystem& c, std::size_t element_bound = 2000);

using WeightMap = std::map<Letter, Rat>;

WeightMap unit_weights(const ChainSystem& c);

bool is_weighted_graded(const ChainSystem& c, const WeightMap& weights);

struct GarsideReport {
  bool weighted_graded = false;
  bool bounded = false;  // unique min and max, finite height
  bool balanced = false;
  bool restriction_property = false;
  bool group_like = false;  // certified via the restriction property
  bool group_like_direct_ran = false;
  bool group_like_direct = false;
  bool lattice = false;
  std::string detail;
  bool pass() const {
    return weighted_graded && bounded && balanced && group_like && lattice;
  }
};

GarsideReport is_garside(const ChainSystem& c, const WeightMap& weights,
                         std::size_t direct_group_like_bound = 2000);

}  // namespace ncchain
