#pragma once

// Basic intervals of the pre-Cantor sets E_n = F_n^{-1}([-1,1]) and the
// scale quantities attached to them.
//
// Every inverse branch of F_n factors through the two maps u and 1 - u:
//
//   v(t) = g_1(gamma_1 * g_2(gamma_2 * ... gamma_{n-1} * g_n(t~))),
//   t~   = gamma_n (1 - t) / 2,  g_l in {u, 1 - u},
//   u(t) = 1/2 - sqrt(1 - 4t)/2.
//
// A BranchWord records the choice of g_l per level (L: u, R: 1 - u).
// Evaluation carries the radicand 1 - 4x alongside each argument x so that
// neither u nor the radicand is formed by subtracting nearly equal numbers.

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "cantor/gamma.hpp"
#include "cantor/real.hpp"

namespace cantor {

enum class Letter : std::uint8_t { L, R };

class BranchWord {
 public:
  explicit BranchWord(std::vector<Letter> letters);

  /// "LRRL" etc.; throws InvalidInput on empty or foreign characters.
  static BranchWord parse(std::string_view text);
  static BranchWord all_left(int length);
  /// The word addressing I_{j+1,n}, i.e. the j-th level-n basic interval
  /// counted from the left starting at 0.
  static BranchWord from_position(std::uint64_t position, int length);

  [[nodiscard]] int length() const noexcept { return static_cast<int>(letters_.size()); }
  [[nodiscard]] Letter operator[](int level) const { return letters_[static_cast<std::size_t>(level - 1)]; }
  [[nodiscard]] const std::vector<Letter>& letters() const noexcept { return letters_; }
  /// Left-to-right position of the addressed basic interval (0-based).
  [[nodiscard]] std::uint64_t position() const;
  [[nodiscard]] BranchWord extended(Letter next) const;
  [[nodiscard]] std::string to_string() const;

  friend bool operator==(const BranchWord&, const BranchWord&) = default;

 private:
  std::vector<Letter> letters_;
};

template <Real T>
struct Interval {
  T lo;
  T hi;

  [[nodiscard]] T length() const { return hi - lo; }
  [[nodiscard]] bool contains(const T& x) const { return lo <= x && x <= hi; }
  [[nodiscard]] bool contains(const Interval& other) const { return lo <= other.lo && other.hi <= hi; }
};

/// u(t) = 1/2 - sqrt(1-4t)/2 on [0, 1/4], evaluated as 2t / (1 + sqrt(1-4t)).
template <Real T>
T u_map(const T& t);

/// Value of the inverse branch addressed by `word` at t in [-1, 1].
template <Real T>
T branch_value(const GammaSequence& gamma, const BranchWord& word, const T& t);

/// Same composition, but parameterised by the innermost argument
/// t~ in [0, gamma_n] directly (t~ = gamma_n (1 - t) / 2).
template <Real T>
T branch_value_inner(const GammaSequence& gamma, const BranchWord& word, const T& inner);

/// Signed difference g(a) - g(b) of the composition at two innermost
/// arguments, propagated level by level without subtracting the two
/// branch values (which may agree to many digits).
template <Real T>
T branch_difference(const GammaSequence& gamma, const BranchWord& word, const T& inner_a,
                    const T& inner_b);

template <Real T>
Interval<T> basic_interval(const GammaSequence& gamma, const BranchWord& word);

/// All 2^level basic intervals of E_level, left to right. level = 0 gives [0, 1].
template <Real T>
std::vector<Interval<T>> basic_intervals(const GammaSequence& gamma, int level);

/// Gaps H_{j,level} = (b_{2j-1,level+1}, a_{2j,level+1}), j = 1..2^level,
/// derived from the level+1 intervals.
template <Real T>
std::vector<Interval<T>> gaps(const GammaSequence& gamma, int level);

/// l_{1,s}: length of the leftmost level-s interval (l_{1,0} = 1).
template <Real T>
T leftmost_length(const GammaSequence& gamma, int s);

/// delta_s = gamma_0 gamma_1 ... gamma_s.
template <Real T>
T delta(const GammaSequence& gamma, int s) {
  return gamma.delta<T>(s);
}

}  // namespace cantor
