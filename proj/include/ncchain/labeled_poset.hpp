#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ncchain/word.hpp"

namespace ncchain {

struct Cover {
  std::size_t lower = 0;
  std::size_t upper = 0;
  Letter label;
};

// Finite poset given by its Hasse diagram, with one letter per cover.
// Construction validates acyclicity, irredundancy of the cover list and
// label uniqueness per edge.
class LabeledPoset {
 public:
  LabeledPoset(std::vector<std::string> element_names, std::vector<Cover> covers);

  std::size_t size() const { return names_.size(); }
  const std::string& name(std::size_t i) const { return names_[i]; }
  const std::vector<Cover>& covers() const { return covers_; }

  const std::vector<std::size_t>& up(std::size_t i) const { return up_[i]; }
  const std::vector<std::size_t>& down(std::size_t i) const { return down_[i]; }
  Letter label(std::size_t lower, std::size_t upper) const;

  bool leq(std::size_t a, std::size_t b) const { return leq_[a][b] != 0; }

  std::vector<std::size_t> minimal_elements() const;
  std::vector<std::size_t> maximal_elements() const;
  std::optional<std::size_t> unique_min() const;
  std::optional<std::size_t> unique_max() const;

  // Height = number of covers on a longest chain.
  std::size_t height() const;

  // All maximal chains (min element to max element), as element paths,
  // in deterministic order.
  std::vector<std::vector<std::size_t>> maximal_chains() const;
  // Label words of the maximal chains, bottom to top.
  std::vector<Word> maximal_chain_words() const;

  // Label words of saturated chains from a up to b.
  std::vector<Word> interval_words(std::size_t a, std::size_t b) const;

 private:
  std::vector<std::string> names_;
  std::vector<Cover> covers_;
  std::vector<std::vector<std::size_t>> up_, down_;
  std::vector<std::vector<char>> leq_;
};

struct LatticeReport {
  bool is_lattice = false;
  bool has_bounds = false;
  std::string witness;  // offending pair, empty when is_lattice
};

LatticeReport lattice_check(const LabeledPoset& p);

LabeledPoset labeled_product(const LabeledPoset& p, const LabeledPoset& q);

// Decides labeled-poset isomorphism.  If label_map is given it must be a
// bijection of the occurring label sets and is respected; otherwise the
// label bijection is searched for along with the element map (set
// label_map = nullptr for the unlabeled search).
bool isomorphic_labeled(const LabeledPoset& p, const LabeledPoset& q,
                        const std::map<Letter, Letter>* label_map = nullptr,
                        std::size_t element_bound = 5000);

std::vector<Letter> poset_labels(const LabeledPoset& p);

std::string to_dot(const LabeledPoset& p);

}  // namespace ncchain
