#include "cantor/geometry.hpp"

#include <algorithm>

#include "cantor/errors.hpp"
#include "detail/u_arg.hpp"

namespace cantor {

// ---------------------------------------------------------------------------
// BranchWord

BranchWord::BranchWord(std::vector<Letter> letters) : letters_(std::move(letters)) {
  if (letters_.empty()) throw InvalidInput("branch word must be nonempty");
}

BranchWord BranchWord::parse(std::string_view text) {
  std::vector<Letter> letters;
  for (char c : text) {
    if (c == 'L' || c == 'l') {
      letters.push_back(Letter::L);
    } else if (c == 'R' || c == 'r') {
      letters.push_back(Letter::R);
    } else {
      throw InvalidInput("branch word letters must be L or R");
    }
  }
  return BranchWord(std::move(letters));
}

BranchWord BranchWord::all_left(int length) {
  if (length < 1) throw InvalidInput("branch word length must be >= 1");
  return BranchWord(std::vector<Letter>(static_cast<std::size_t>(length), Letter::L));
}

// Choosing 1 - u at a level reverses the orientation of everything nested
// inside it, so the left/right child swap their letters below an odd number of R's.
BranchWord BranchWord::from_position(std::uint64_t position, int length) {
  if (length < 1 || length > 63) throw InvalidInput("branch word length must be in [1, 63]");
  if (position >> length) throw InvalidInput("position out of range for word length");
  std::vector<Letter> letters(static_cast<std::size_t>(length));
  bool increasing = true;
  for (int l = 1; l <= length; ++l) {
    const bool right_child = (position >> (length - l)) & 1U;
    const Letter letter = (right_child == increasing) ? Letter::R : Letter::L;
    letters[static_cast<std::size_t>(l - 1)] = letter;
    if (letter == Letter::R) increasing = !increasing;
  }
  return BranchWord(std::move(letters));
}

std::uint64_t BranchWord::position() const {
  std::uint64_t pos = 0;
  bool increasing = true;
  for (Letter letter : letters_) {
    const bool right_child = (letter == Letter::R) == increasing;
    pos = (pos << 1) | (right_child ? 1U : 0U);
    if (letter == Letter::R) increasing = !increasing;
  }
  return pos;
}

BranchWord BranchWord::extended(Letter next) const {
  auto letters = letters_;
  letters.push_back(next);
  return BranchWord(std::move(letters));
}

std::string BranchWord::to_string() const {
  std::string s;
  s.reserve(letters_.size());
  for (Letter l : letters_) s += (l == Letter::L ? 'L' : 'R');
  return s;
}

// ---------------------------------------------------------------------------
// Composition kernels

namespace {

using detail::UArg;
using detail::inner_arg;
using detail::next_arg;
using detail::u_of;

template <Real T>
T compose(const GammaSequence& gamma, const BranchWord& word, UArg<T> arg) {
  const int n = word.length();
  for (int l = n;; --l) {
    const T w = u_of(arg);
    if (l == 1) return word[1] == Letter::L ? w : T(1.0) - w;
    arg = next_arg(gamma.value<T>(l - 1), w, word[l]);
  }
}

template <Real T>
void check_inner(const GammaSequence& gamma, const BranchWord& word, const T& inner) {
  const T g = gamma.value<T>(word.length());
  if (!(inner >= T(0.0) && inner <= g)) {
    throw InvalidInput("innermost argument must lie in [0, gamma_n]");
  }
}

}  // namespace

template <Real T>
T u_map(const T& t) {
  if (!(t >= T(0.0) && t <= T(0.25))) throw InvalidInput("u is defined on [0, 1/4]");
  return u_of(inner_arg(t));
}

template <Real T>
T branch_value(const GammaSequence& gamma, const BranchWord& word, const T& t) {
  if (!(t >= T(-1.0) && t <= T(1.0))) throw InvalidInput("branch argument must lie in [-1, 1]");
  const T g = gamma.value<T>(word.length());
  // At t = -1 this gives t~ = g and 1 - 4g exactly, matching what the
  // child word ending in R produces for the same endpoint.
  const T inner = g * (T(1.0) - t) / T(2.0);
  return compose(gamma, word, inner_arg(inner));
}

template <Real T>
T branch_value_inner(const GammaSequence& gamma, const BranchWord& word, const T& inner) {
  check_inner(gamma, word, inner);
  return compose(gamma, word, inner_arg(inner));
}

template <Real T>
T branch_difference(const GammaSequence& gamma, const BranchWord& word, const T& inner_a,
                    const T& inner_b) {
  check_inner(gamma, word, inner_a);
  check_inner(gamma, word, inner_b);
  UArg<T> a = inner_arg(inner_a);
  UArg<T> b = inner_arg(inner_b);
  T dx = inner_a - inner_b;
  const int n = word.length();
  for (int l = n;; --l) {
    // u(xa) - u(xb) = 2 (xa - xb) / (sqrt(1 - 4xa) + sqrt(1 - 4xb))
    const T denom = sqrtval(a.radicand) + sqrtval(b.radicand);
    const T dw = denom == T(0.0) ? T(0.0) : T(2.0) * dx / denom;
    const Letter letter = word[l];
    const T dg = letter == Letter::L ? dw : -dw;
    if (l == 1) return dg;
    const T wa = u_of(a);
    const T wb = u_of(b);
    const T g = gamma.value<T>(l - 1);
    a = next_arg(g, wa, letter);
    b = next_arg(g, wb, letter);
    dx = g * dg;
  }
}

template <Real T>
Interval<T> basic_interval(const GammaSequence& gamma, const BranchWord& word) {
  const T left = branch_value(gamma, word, T(-1.0));
  const T right = branch_value(gamma, word, T(1.0));
  return left < right ? Interval<T>{left, right} : Interval<T>{right, left};
}

template <Real T>
std::vector<Interval<T>> basic_intervals(const GammaSequence& gamma, int level) {
  if (level < 0 || level > 30) throw InvalidInput("interval level must be in [0, 30]");
  if (level == 0) return {Interval<T>{T(0.0), T(1.0)}};
  const std::uint64_t count = std::uint64_t{1} << level;
  std::vector<Interval<T>> out;
  out.reserve(count);
  for (std::uint64_t j = 0; j < count; ++j) {
    out.push_back(basic_interval<T>(gamma, BranchWord::from_position(j, level)));
  }
  return out;
}

template <Real T>
std::vector<Interval<T>> gaps(const GammaSequence& gamma, int level) {
  const auto children = basic_intervals<T>(gamma, level + 1);
  std::vector<Interval<T>> out;
  out.reserve(children.size() / 2);
  for (std::size_t j = 0; j + 1 < children.size(); j += 2) {
    out.push_back(Interval<T>{children[j].hi, children[j + 1].lo});
  }
  return out;
}

template <Real T>
T leftmost_length(const GammaSequence& gamma, int s) {
  if (s < 0) throw InvalidInput("level must be >= 0");
  if (s == 0) return T(1.0);
  // The leftmost interval starts at 0 (branch value at t~ = 0), so its
  // length is the value at t~ = gamma_s.
  return branch_value_inner(gamma, BranchWord::all_left(s), gamma.value<T>(s));
}

#define CANTOR_INSTANTIATE_GEOMETRY(T)                                                            \
  template T u_map<T>(const T&);                                                                  \
  template T branch_value<T>(const GammaSequence&, const BranchWord&, const T&);                  \
  template T branch_value_inner<T>(const GammaSequence&, const BranchWord&, const T&);            \
  template T branch_difference<T>(const GammaSequence&, const BranchWord&, const T&, const T&);   \
  template Interval<T> basic_interval<T>(const GammaSequence&, const BranchWord&);                \
  template std::vector<Interval<T>> basic_intervals<T>(const GammaSequence&, int);                \
  template std::vector<Interval<T>> gaps<T>(const GammaSequence&, int);                           \
  template T leftmost_length<T>(const GammaSequence&, int);

CANTOR_INSTANTIATE_GEOMETRY(double)
CANTOR_INSTANTIATE_GEOMETRY(DoubleDouble)

#undef CANTOR_INSTANTIATE_GEOMETRY

}  // namespace cantor
