#pragma once

#include <cmath>
#include <concepts>
#include <cstddef>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cophtree/cophenetic.hpp"
#include "cophtree/phylo_tree.hpp"

namespace cophtree {

// A poset carrying a strict flow. leq is the unique-morphism test, shift the
// epsilon-translation. witness(a, b) reports the per-entry evidence for
// leq(a, b); it is total so failures can be inspected too.
template <typename P>
concept PosetWithFlow =
    requires(const P& p, const typename P::Object& a,
             const typename P::Object& b, double eps) {
      typename P::Object;
      typename P::Witness;
      { p.leq(a, b) } -> std::convertible_to<bool>;
      { p.shift(a, eps) } -> std::convertible_to<typename P::Object>;
      { p.witness(a, b) } -> std::convertible_to<typename P::Witness>;
    };

// Evidence that x and y are epsilon-interleaved: witness_forward backs the
// morphism x -> shift(y, epsilon), witness_backward backs y -> shift(x,
// epsilon). In a poset no further coherence data is needed.
template <typename W>
struct InterleavingCertificate {
  double epsilon;
  W witness_forward;
  W witness_backward;
};

// Certificate when both morphisms exist at this epsilon, nullopt otherwise.
// Absence is a normal outcome, not an error.
template <PosetWithFlow P>
std::optional<InterleavingCertificate<typename P::Witness>> is_interleaved(
    const P& p, const typename P::Object& x, const typename P::Object& y,
    double eps) {
  if (!std::isfinite(eps) || eps < 0.0)
    throw std::invalid_argument("epsilon must be finite and >= 0");
  typename P::Object sy = p.shift(y, eps);
  typename P::Object sx = p.shift(x, eps);
  if (!p.leq(x, sy) || !p.leq(y, sx)) return std::nullopt;
  return InterleavingCertificate<typename P::Witness>{eps, p.witness(x, sy),
                                                      p.witness(y, sx)};
}

// Smallest epsilon at which x and y interleave, located by binary search on
// [0, eps_max]. The returned value is certified passing and lies within tol
// of the infimum; +infinity when even eps_max fails.
template <PosetWithFlow P>
double interleaving_distance(const P& p, const typename P::Object& x,
                             const typename P::Object& y, double tol,
                             double eps_max) {
  if (!std::isfinite(tol) || tol <= 0.0)
    throw std::invalid_argument("tolerance must be finite and > 0");
  if (!std::isfinite(eps_max) || eps_max < 0.0)
    throw std::invalid_argument("eps_max must be finite and >= 0");
  if (is_interleaved(p, x, y, 0.0)) return 0.0;
  if (!is_interleaved(p, x, y, eps_max))
    return std::numeric_limits<double>::infinity();
  double lo = 0.0;
  double hi = eps_max;
  while (hi - lo > tol) {
    double mid = lo + (hi - lo) / 2;
    if (mid <= lo || mid >= hi) break;
    if (is_interleaved(p, x, y, mid))
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

// Which product order ℝⁿ carries, with the matching shift direction: the
// componentwise <= order flows upward (a + eps), the >= order flows downward
// (a - eps). Either way two points interleave at eps exactly when their
// max-norm gap is at most eps.
enum class Order { leq_up, geq_down };

class RnPoset {
 public:
  using Object = std::vector<double>;
  struct WitnessRow {
    std::size_t index;
    double source;
    double target;
    double margin;  // slack in the defining inequality, negative = violated
    bool operator==(const WitnessRow&) const = default;
  };
  using Witness = std::vector<WitnessRow>;

  explicit RnPoset(Order order = Order::leq_up) : order_(order) {}

  bool leq(const Object& a, const Object& b) const;
  Object shift(const Object& a, double eps) const;
  Witness witness(const Object& a, const Object& b) const;
  Order order() const { return order_; }

 private:
  Order order_;
};

// Labeled merge trees ordered by existence of a label-preserving morphism,
// decided through the entrywise vector criterion, with smoothing as the flow.
class PhTreePoset {
 public:
  using Object = PhyloTree;
  struct WitnessRow {
    std::string i;
    std::string j;
    double source;
    double target;
    double margin;
    bool operator==(const WitnessRow&) const = default;
  };
  using Witness = std::vector<WitnessRow>;

  bool leq(const Object& a, const Object& b) const;
  Object shift(const Object& a, double eps) const;
  Witness witness(const Object& a, const Object& b) const;
};

// Epsilon-smoothing: every height drops by eps, shape and labels unchanged.
PhyloTree smooth(const PhyloTree& t, double eps);

// max |f(l(i) v l(j)) - g(m(i) v m(j))| over pairs i <= j, via the two
// cophenetic vectors. O(n^2).
double phtree_distance_closed_form(const PhyloTree& a, const PhyloTree& b);

// Binary-search distances with self-sizing search ceilings: the exact answer
// is known to be bounded by the max-norm gap (points) or the closed form
// (trees), so eps_max = that bound + 1.
double rn_interleaving_distance(const std::vector<double>& a,
                                const std::vector<double>& b,
                                double tol = 1e-9, Order order = Order::leq_up);
double phtree_interleaving_distance(const PhyloTree& a, const PhyloTree& b,
                                    double tol = 1e-9);

// {"epsilon": e, "witness_forward": {"rows": [...]}, "witness_backward": ...}
std::string to_json(const InterleavingCertificate<RnPoset::Witness>& c,
                    int max_significant_digits = 0);
std::string to_json(const InterleavingCertificate<PhTreePoset::Witness>& c,
                    int max_significant_digits = 0);

}  // namespace cophtree
