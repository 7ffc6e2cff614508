#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ncchain/matrix.hpp"
#include "ncchain/rational.hpp"

namespace ncchain {

enum class CartanType { finite, affine, other };

struct CartanMatrix {
  std::size_t n = 0;
  std::vector<IntVec> a;  // n x n integer entries
  RatVec d;               // symmetrizer, positive

  void validate() const;
  // symmetrized form S_ij = d_i a_ij
  Mat symmetrized() const;
};

CartanType classify(const CartanMatrix& cartan);

// Cartan data plus a fixed defining word for the Coxeter element.
class RootDatum {
 public:
  RootDatum(CartanMatrix cartan, std::vector<std::size_t> cox_word);

  const CartanMatrix& cartan() const { return cartan_; }
  std::size_t rank() const { return cartan_.n; }
  CartanType type() const { return type_; }
  const std::vector<std::size_t>& cox_word() const { return cox_word_; }

  // action on V in the simple-root basis
  const Mat& simple_reflection(std::size_t i) const { return simple_refl_[i]; }
  const Mat& coxeter_matrix() const { return c_matrix_; }
  Mat coxeter_inverse() const { return c_matrix_.inverse(); }

  // K(x, y), both arguments in simple-root coordinates
  Rat k_form(const RatVec& x, const RatVec& y) const;
  Rat k_form(const IntVec& x, const IntVec& y) const;

  // E_c(x, y) and E_{c^{-1}}(x, y), both arguments in root coordinates
  Rat ec(const IntVec& x, const IntVec& y) const;
  Rat ec_inv(const IntVec& x, const IntVec& y) const;
  // E_c(beta-check, gamma) with the first argument a co-root
  Rat ec_coroot(const IntVec& beta, const IntVec& gamma) const;

  // reflection in a real root, as a matrix on V; throws on K(b,b) = 0
  Mat reflection_of_root(const IntVec& beta) const;

  // all positive real roots with coordinates within the box, via
  // reflection closure
  std::vector<IntVec> positive_real_roots_bounded(const IntVec& bound) const;

  // affine only
  const IntVec& delta() const;
  bool is_horizontal(const IntVec& beta) const;

 private:
  CartanMatrix cartan_;
  std::vector<std::size_t> cox_word_;
  CartanType type_;
  std::vector<Mat> simple_refl_;
  Mat c_matrix_;
  Mat ec_coroot_root_;     // E_c(alpha_i-check, alpha_j)
  Mat ecinv_coroot_root_;  // same for the reversed word
  std::optional<IntVec> delta_;
};

// Named presets: "A3", "B2", "D4", "F4", and affine "A~3[:outer=1,3]",
// "B~3", "D~4", "F~4".  For affine type A the orientation (outer point
// set) fixes the Coxeter word; other types default to 1..n.
RootDatum datum_from_type(const std::string& type_string);

// Cartan text format: first line n, then n rows of n integers, optional
// "d: ..." line, optional "cox: ..." line.
RootDatum datum_from_text(const std::string& text);

CartanMatrix cartan_from_type(const std::string& type_string);

std::string root_str(const IntVec& v);

}  // namespace ncchain
