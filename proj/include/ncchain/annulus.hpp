#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ncchain/affine_mcsul.hpp"
#include "ncchain/rational.hpp"

namespace ncchain {

// Permutation pi of Z with pi(i+n) = pi(i)+n, stored as the window of
// images of 1..n.
class AffinePermutation {
 public:
  explicit AffinePermutation(std::size_t n);  // identity
  AffinePermutation(std::size_t n, std::vector<Int> window);

  std::size_t period() const { return n_; }
  const std::vector<Int>& window() const { return window_; }
  Int operator()(Int i) const;

  AffinePermutation compose(const AffinePermutation& o) const;  // this after o
  AffinePermutation inverse() const;
  bool operator==(const AffinePermutation& o) const {
    return n_ == o.n_ && window_ == o.window_;
  }
  bool operator!=(const AffinePermutation& o) const { return !(*this == o); }
  bool is_identity() const;

 private:
  std::size_t n_;
  std::vector<Int> window_;
};

// one cycle of a cycle expression; infinite cycles list one fundamental
// segment, with pi(last) = first + shift
struct CyclePattern {
  std::vector<Int> entries;
  bool infinite = false;
  Int shift = 0;
};

struct CycleExpr {
  std::size_t period = 0;
  std::vector<CyclePattern> cycles;
  std::string str() const;
};

CycleExpr to_cycles(const AffinePermutation& p);
AffinePermutation from_cycles(std::size_t n, const std::vector<CyclePattern>& cycles);
CycleExpr parse_cycles(const std::string& text, std::size_t period);

bool is_monotone_infinite_cycle(const CyclePattern& c);

// The type-A annulus: outer points on the outer boundary, the rest
// inner; the Coxeter element steps outer points up and inner points
// down.
class AnnulusModel {
 public:
  AnnulusModel(std::size_t n, std::vector<Int> outer);

  std::size_t n() const { return n_; }
  const std::vector<Int>& outer() const { return outer_; }
  const std::vector<Int>& inner() const { return inner_; }
  bool is_outer(Int point) const;
  std::size_t side_rank(Int point) const;

  AffinePermutation coxeter() const;
  Int c_point(Int a) const;
  AffinePermutation loop(Int a) const;
  AffinePermutation factored_translation(Int a) const;   // loop or inverse loop
  AffinePermutation t_reflection(Int a, std::size_t k) const;  // (a, c^k(a))_n

  Ternary annular_membership_limited(const AffinePermutation& p) const;

  struct SweepReport {
    std::size_t cases = 0;
    std::vector<std::string> failures;
    bool pass() const { return !failures.empty() ? false : cases > 0; }
  };
  SweepReport verify_type_a() const;

 private:
  std::size_t n_;
  std::vector<Int> outer_, inner_;
};

// signed: pi(i+2n) = pi(i)+2n and pi(-i) = -pi(i)
class SignedAffinePermutation {
 public:
  explicit SignedAffinePermutation(std::size_t n);  // identity
  std::size_t points() const { return n_; }
  Int operator()(Int i) const;
  SignedAffinePermutation compose(const SignedAffinePermutation& o) const;
  SignedAffinePermutation inverse() const;
  bool operator==(const SignedAffinePermutation& o) const {
    return n_ == o.n_ && window_ == o.window_;
  }
  bool operator!=(const SignedAffinePermutation& o) const { return !(*this == o); }

  // pi(x) = y, propagated through period and sign rules
  void assign(Int x, Int y);
  void validate() const;

 private:
  std::size_t n_;
  std::vector<std::optional<Int>> window_;  // images of 1..n
  friend struct SignedBuilderAccess;
};

// barred integers: (v, 0) is plain v, (v, 1) is v-bar
struct BarredInt {
  Int v = 0;
  int bar = 0;
  bool operator==(const BarredInt& o) const { return v == o.v && bar == o.bar; }
  bool operator!=(const BarredInt& o) const { return !(*this == o); }
  bool operator<(const BarredInt& o) const {
    return std::tie(v, bar) < std::tie(o.v, o.bar);
  }
};

BarredInt bar_op(const BarredInt& x, std::size_t n);      // i -> i-bar -> i+2n
BarredInt bar_inv(const BarredInt& x, std::size_t n);
BarredInt neg(const BarredInt& x, std::size_t n);         // -i-bar = (-i-2n)-bar
BarredInt add2n(const BarredInt& x, Int k, std::size_t n);
std::string barred_str(const BarredInt& x);

// pi(i+2n) = pi(i)+2n, pi(-i) = -pi(i), pi(i-bar) = pi(i)-bar
class BarredAffinePermutation {
 public:
  explicit BarredAffinePermutation(std::size_t n);
  std::size_t points() const { return n_; }
  BarredInt operator()(const BarredInt& x) const;
  BarredAffinePermutation compose(const BarredAffinePermutation& o) const;
  BarredAffinePermutation inverse() const;
  bool operator==(const BarredAffinePermutation& o) const;
  bool operator!=(const BarredAffinePermutation& o) const { return !(*this == o); }

  void assign(const BarredInt& x, const BarredInt& y);
  void validate() const;

 private:
  std::size_t n_;
  std::vector<std::optional<BarredInt>> window_;  // images of 1..n plain
};

struct IdentityChainReport {
  std::size_t checks = 0;
  std::vector<std::string> failures;
  bool pass() const { return failures.empty() && checks > 0; }
};

IdentityChainReport verify_type_b(std::size_t n);
IdentityChainReport verify_type_d(std::size_t n);

// matrix-model vs annulus-model agreement on every ordered pair of
// horizontal-or-factored letters
struct DualPathReport {
  std::size_t pairs = 0;
  bool dictionary_ok = false;
  std::vector<std::string> mismatches;
  bool pass() const { return dictionary_ok && mismatches.empty() && pairs > 0; }
};

DualPathReport verify_dual_path(const AnnulusModel& am, const McSul& ms);

}  // namespace ncchain
