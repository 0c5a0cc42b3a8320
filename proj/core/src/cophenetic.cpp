#include "cophtree/cophenetic.hpp"

#include <cmath>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "cophtree/decimal.hpp"
#include "cophtree/errors.hpp"

namespace cophtree {

CopheneticVector::CopheneticVector(std::size_t leaf_count,
                                   std::vector<double> entries,
                                   std::vector<std::string> names)
    : leaf_count_(leaf_count),
      entries_(std::move(entries)),
      names_(std::move(names)) {
  if (names_.size() != leaf_count_ ||
      entries_.size() != leaf_count_ * (leaf_count_ + 1) / 2)
    throw std::invalid_argument("cophenetic vector size mismatch");
}

CopheneticVector cophenetic_vector(const PhyloTree& t, const LcaIndex& idx) {
  const std::size_t n = static_cast<std::size_t>(t.leaf_count());
  std::vector<double> entries(n * (n + 1) / 2);
  std::size_t pos = 0;
  for (std::size_t i = 0; i < n; ++i) {
    NodeId li = t.leaf(static_cast<int>(i));
    entries[pos++] = t.tree().height(li);
    for (std::size_t j = i + 1; j < n; ++j)
      entries[pos++] = idx.join_height(li, t.leaf(static_cast<int>(j)));
  }
  return CopheneticVector(n, std::move(entries), t.names());
}

CopheneticVector cophenetic_vector(const PhyloTree& t) {
  LcaIndex idx(t.tree());
  return cophenetic_vector(t, idx);
}

namespace {

void check_comparable(const CopheneticVector& a, const CopheneticVector& b) {
  if (a.leaf_count() != b.leaf_count())
    throw TreeError(TreeErrc::dimension_mismatch,
                    "vectors over " + std::to_string(a.leaf_count()) +
                        " and " + std::to_string(b.leaf_count()) + " leaves");
  if (a.names() != b.names())
    throw TreeError(TreeErrc::label_set_mismatch,
                    "trees are labeled by different leaf name sets");
}

}  // namespace

double linf_distance(const CopheneticVector& a, const CopheneticVector& b) {
  check_comparable(a, b);
  const std::vector<double>& ea = a.entries();
  const std::vector<double>& eb = b.entries();
  double d = 0.0;
  for (std::size_t k = 0; k < ea.size(); ++k)
    d = std::max(d, std::abs(ea[k] - eb[k]));
  return d;
}

double lp_distance(const CopheneticVector& a, const CopheneticVector& b,
                   PNorm p) {
  if (p == PNorm::linf) return linf_distance(a, b);
  check_comparable(a, b);
  const std::vector<double>& ea = a.entries();
  const std::vector<double>& eb = b.entries();
  double acc = 0.0;
  for (std::size_t k = 0; k < ea.size(); ++k) {
    double d = std::abs(ea[k] - eb[k]);
    acc += p == PNorm::l1 ? d : d * d;
  }
  return p == PNorm::l1 ? acc : std::sqrt(acc);
}

bool hom_exists(const CopheneticVector& a, const CopheneticVector& b) {
  check_comparable(a, b);
  const std::vector<double>& ea = a.entries();
  const std::vector<double>& eb = b.entries();
  for (std::size_t k = 0; k < ea.size(); ++k)
    if (ea[k] < eb[k]) return false;
  return true;
}

std::string to_json(const CopheneticVector& v, int max_significant_digits) {
  const std::size_t n = v.leaf_count();
  std::string out = "{\"labels\":[";
  for (std::size_t i = 0; i < n; ++i) {
    if (i) out += ',';
    out += nlohmann::json(v.names()[i]).dump();
  }
  out += "],\"rows\":[";
  for (std::size_t i = 0; i < n; ++i) {
    if (i) out += ',';
    out += '[';
    for (std::size_t j = i; j < n; ++j) {
      if (j > i) out += ',';
      out += format_double(v.entry(i, j), max_significant_digits);
    }
    out += ']';
  }
  out += "]}";
  return out;
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    out += c;
    if (c == '"') out += '"';
  }
  out += '"';
  return out;
}

}  // namespace

std::string to_csv(const CopheneticVector& v, int max_significant_digits) {
  const std::size_t n = v.leaf_count();
  std::string out = "label_i,label_j,height\n";
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      out += csv_field(v.names()[i]);
      out += ',';
      out += csv_field(v.names()[j]);
      out += ',';
      out += format_double(v.entry(i, j), max_significant_digits);
      out += '\n';
    }
  }
  return out;
}

}  // namespace cophtree
