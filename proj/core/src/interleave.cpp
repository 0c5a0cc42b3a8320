#include "cophtree/interleave.hpp"

#include <algorithm>
#include <utility>

#include <nlohmann/json.hpp>

#include "cophtree/decimal.hpp"
#include "cophtree/errors.hpp"

namespace cophtree {

namespace {

// Raw points are plain argument data, not tree structures, so a size clash
// is an invalid_argument rather than a TreeError.
void check_same_dimension(const std::vector<double>& a,
                          const std::vector<double>& b) {
  if (a.size() != b.size())
    throw std::invalid_argument("points live in different dimensions (" +
                                std::to_string(a.size()) + " vs " +
                                std::to_string(b.size()) + ")");
}

}  // namespace

bool RnPoset::leq(const Object& a, const Object& b) const {
  check_same_dimension(a, b);
  for (std::size_t i = 0; i < a.size(); ++i) {
    const bool ok = order_ == Order::leq_up ? a[i] <= b[i] : a[i] >= b[i];
    if (!ok) return false;
  }
  return true;
}

RnPoset::Object RnPoset::shift(const Object& a, double eps) const {
  const double delta = order_ == Order::leq_up ? eps : -eps;
  Object out = a;
  for (double& x : out) x += delta;
  return out;
}

RnPoset::Witness RnPoset::witness(const Object& a, const Object& b) const {
  check_same_dimension(a, b);
  Witness w(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double margin = order_ == Order::leq_up ? b[i] - a[i] : a[i] - b[i];
    w[i] = WitnessRow{i, a[i], b[i], margin};
  }
  return w;
}

bool PhTreePoset::leq(const Object& a, const Object& b) const {
  return hom_exists(cophenetic_vector(a), cophenetic_vector(b));
}

PhTreePoset::Object PhTreePoset::shift(const Object& a, double eps) const {
  return smooth(a, eps);
}

PhTreePoset::Witness PhTreePoset::witness(const Object& a,
                                          const Object& b) const {
  const CopheneticVector va = cophenetic_vector(a);
  const CopheneticVector vb = cophenetic_vector(b);
  const std::size_t n = va.leaf_count();
  if (vb.leaf_count() != n)
    throw TreeError(TreeErrc::dimension_mismatch,
                    "trees have different leaf counts");
  if (va.names() != vb.names())
    throw TreeError(TreeErrc::label_set_mismatch,
                    "trees are labeled by different leaf name sets");
  Witness w;
  w.reserve(va.pair_count());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      const double source = va.entry(i, j);
      const double target = vb.entry(i, j);
      w.push_back(
          {va.names()[i], va.names()[j], source, target, source - target});
    }
  }
  return w;
}

PhyloTree smooth(const PhyloTree& t, double eps) {
  if (!std::isfinite(eps) || eps < 0.0)
    throw std::invalid_argument("epsilon must be finite and >= 0");
  MergeTree shifted = t.tree().with_heights_shifted(-eps);
  std::vector<NodeId> leaf_of_label(static_cast<std::size_t>(t.leaf_count()));
  for (int k = 0; k < t.leaf_count(); ++k) leaf_of_label[k] = t.leaf(k);
  return PhyloTree(std::move(shifted), std::move(leaf_of_label), t.names());
}

double phtree_distance_closed_form(const PhyloTree& a, const PhyloTree& b) {
  return linf_distance(cophenetic_vector(a), cophenetic_vector(b));
}

double rn_interleaving_distance(const std::vector<double>& a,
                                const std::vector<double>& b, double tol,
                                Order order) {
  check_same_dimension(a, b);
  double gap = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!std::isfinite(a[i]) || !std::isfinite(b[i]))
      throw std::invalid_argument("coordinates must be finite");
    gap = std::max(gap, std::abs(a[i] - b[i]));
  }
  return interleaving_distance(RnPoset(order), a, b, tol, gap + 1.0);
}

double phtree_interleaving_distance(const PhyloTree& a, const PhyloTree& b,
                                    double tol) {
  const double bound = phtree_distance_closed_form(a, b);
  return interleaving_distance(PhTreePoset{}, a, b, tol, bound + 1.0);
}

namespace {

std::string rows_json(const RnPoset::Witness& w, int digits) {
  std::string out = "{\"rows\":[";
  for (std::size_t k = 0; k < w.size(); ++k) {
    if (k) out += ',';
    out += "{\"index\":" + std::to_string(w[k].index) +
           ",\"source\":" + format_double(w[k].source, digits) +
           ",\"target\":" + format_double(w[k].target, digits) +
           ",\"margin\":" + format_double(w[k].margin, digits) + "}";
  }
  out += "]}";
  return out;
}

std::string rows_json(const PhTreePoset::Witness& w, int digits) {
  std::string out = "{\"rows\":[";
  for (std::size_t k = 0; k < w.size(); ++k) {
    if (k) out += ',';
    out += "{\"i\":" + nlohmann::json(w[k].i).dump() +
           ",\"j\":" + nlohmann::json(w[k].j).dump() +
           ",\"source\":" + format_double(w[k].source, digits) +
           ",\"target\":" + format_double(w[k].target, digits) +
           ",\"margin\":" + format_double(w[k].margin, digits) + "}";
  }
  out += "]}";
  return out;
}

template <typename W>
std::string certificate_json(const InterleavingCertificate<W>& c, int digits) {
  return "{\"epsilon\":" + format_double(c.epsilon, digits) +
         ",\"witness_forward\":" + rows_json(c.witness_forward, digits) +
         ",\"witness_backward\":" + rows_json(c.witness_backward, digits) +
         "}";
}

}  // namespace

std::string to_json(const InterleavingCertificate<RnPoset::Witness>& c,
                    int max_significant_digits) {
  return certificate_json(c, max_significant_digits);
}

std::string to_json(const InterleavingCertificate<PhTreePoset::Witness>& c,
                    int max_significant_digits) {
  return certificate_json(c, max_significant_digits);
}

}  // namespace cophtree
