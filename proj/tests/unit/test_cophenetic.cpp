#include <cmath>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cophtree/cophenetic.hpp"
#include "cophtree/errors.hpp"
#include "cophtree/interleave.hpp"
#include "cophtree/newick.hpp"
#include "cophtree/random_tree.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace cophtree;

namespace {

PhyloTree phylo(const std::string& text,
                HeightConvention c = HeightConvention::depth_negative) {
  return to_phylo(parse_newick(text)[0], c);
}

PhyloTree fig_left() {
  return phylo(
      "((1[&height=1],2[&height=4])[&height=6],"
      "(3[&height=2],4[&height=3])[&height=5])[&height=7];",
      HeightConvention::explicit_heights);
}

PhyloTree fig_right() {
  return phylo(
      "(((3[&height=4],4[&height=1])[&height=5],2[&height=3])[&height=6],"
      "1[&height=2])[&height=7];",
      HeightConvention::explicit_heights);
}

template <TreeErrc expected, typename Fn>
void tree_errc(Fn&& fn) {
  try {
    fn();
  } catch (const TreeError& e) {
    CHECK(e.code() == expected);
    return;
  }
  FAIL("expected a TreeError");
}

}  // namespace

TEST_SUITE_BEGIN("cophenetic");

TEST_CASE("flat offsets walk the upper triangle row-major") {
  CHECK(CopheneticVector::offset(0, 0, 4) == 0);
  CHECK(CopheneticVector::offset(0, 3, 4) == 3);
  CHECK(CopheneticVector::offset(1, 1, 4) == 4);
  CHECK(CopheneticVector::offset(1, 3, 4) == 6);
  CHECK(CopheneticVector::offset(2, 2, 4) == 7);
  CHECK(CopheneticVector::offset(3, 3, 4) == 9);
  CHECK(CopheneticVector::offset(0, 0, 1) == 0);

  // Bijective onto 0..n(n+1)/2-1.
  for (std::size_t n = 1; n <= 12; ++n) {
    std::vector<char> hit(n * (n + 1) / 2, 0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) {
        std::size_t k = CopheneticVector::offset(i, j, n);
        REQUIRE(k < hit.size());
        REQUIRE(!hit[k]);
        hit[k] = 1;
      }
  }
}

TEST_CASE("worked example pair") {
  CopheneticVector vx = cophenetic_vector(fig_left());
  CopheneticVector vy = cophenetic_vector(fig_right());

  CHECK(vx.names() == std::vector<std::string>{"1", "2", "3", "4"});
  CHECK(vx.entries() ==
        std::vector<double>{1, 6, 7, 7, 4, 7, 7, 2, 5, 3});
  CHECK(vy.entries() ==
        std::vector<double>{2, 7, 7, 7, 3, 6, 6, 4, 5, 1});

  CHECK(linf_distance(vx, vy) == 2.0);
  CHECK(lp_distance(vx, vy, PNorm::linf) == 2.0);
  CHECK(lp_distance(vx, vy, PNorm::l1) == 9.0);
  CHECK(lp_distance(vx, vy, PNorm::l2) == std::sqrt(13.0));

  // Mixed signs entrywise: neither direction admits a morphism.
  CHECK(!hom_exists(vx, vy));
  CHECK(!hom_exists(vy, vx));
}

TEST_CASE("depth-negative caterpillar") {
  CopheneticVector v = cophenetic_vector(phylo("((1:1,2:1):1,(3:1,4:1):2):0;"));
  CHECK(v.entries() ==
        std::vector<double>{-2, -1, 0, 0, -2, 0, 0, -3, -2, -3});
}

TEST_CASE("entry lookup is order-insensitive, diagonal is leaf height") {
  std::mt19937_64 rng(53);
  for (int rep = 0; rep < 20; ++rep) {
    PhyloTree t = random_phylo_tree(rng, 2 + static_cast<int>(rng() % 12));
    CopheneticVector v = cophenetic_vector(t);
    std::size_t n = v.leaf_count();
    CHECK(v.pair_count() == n * (n + 1) / 2);
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(v.entry(i, i) == t.tree().height(t.leaf(i)));
      for (std::size_t j = 0; j < n; ++j) CHECK(v.entry(i, j) == v.entry(j, i));
    }
  }
}

TEST_CASE("matches the per-pair walk-up oracle") {
  std::mt19937_64 rng(59);
  for (int rep = 0; rep < 60; ++rep) {
    RandomTreeOptions opt;
    opt.multifurcation_p = rep % 2 ? 0.15 : 0.45;
    PhyloTree t =
        random_phylo_tree(rng, 1 + static_cast<int>(rng() % 24), opt);
    CopheneticVector fast = cophenetic_vector(t);
    CopheneticVector brute = testing::brute_cophenetic(t);
    REQUIRE(fast == brute);
    LcaIndex idx(t.tree());
    REQUIRE(cophenetic_vector(t, idx) == fast);
  }
}

TEST_CASE("constructor validates sizes") {
  CHECK_THROWS_AS(CopheneticVector(2, {0.0, 1.0}, {"A", "B"}),
                  std::invalid_argument);
  CHECK_THROWS_AS(CopheneticVector(2, {0.0, 1.0, 0.0}, {"A"}),
                  std::invalid_argument);
  CHECK_NOTHROW(CopheneticVector(2, {0.0, 1.0, 0.0}, {"A", "B"}));
}

TEST_CASE("comparability checks, dimension before labels") {
  CopheneticVector two(2, {0.0, 1.0, 0.0}, {"A", "B"});
  CopheneticVector three(3, {0, 1, 1, 0, 1, 0}, {"C", "D", "E"});
  CopheneticVector renamed(2, {0.0, 1.0, 0.0}, {"A", "C"});

  // Mismatched sizes always report dimension_mismatch, even though the
  // label sets differ too.
  tree_errc<TreeErrc::dimension_mismatch>([&] { linf_distance(two, three); });
  tree_errc<TreeErrc::dimension_mismatch>([&] { hom_exists(two, three); });
  tree_errc<TreeErrc::label_set_mismatch>([&] { linf_distance(two, renamed); });
  tree_errc<TreeErrc::label_set_mismatch>(
      [&] { lp_distance(two, renamed, PNorm::l1); });
  tree_errc<TreeErrc::label_set_mismatch>([&] { hom_exists(two, renamed); });
}

TEST_CASE("metric axioms on a dyadic grid") {
  // Heights on the 1/1024 grid make every difference and two-term sum exact,
  // so the triangle inequality can be checked without slack.
  std::mt19937_64 rng(61);
  RandomTreeOptions opt;
  opt.dyadic = true;
  for (int rep = 0; rep < 40; ++rep) {
    int n = 2 + static_cast<int>(rng() % 10);
    CopheneticVector a = cophenetic_vector(random_phylo_tree(rng, n, opt));
    CopheneticVector b = cophenetic_vector(random_phylo_tree(rng, n, opt));
    CopheneticVector c = cophenetic_vector(random_phylo_tree(rng, n, opt));
    CHECK(linf_distance(a, a) == 0.0);
    CHECK(linf_distance(a, b) == linf_distance(b, a));
    CHECK(linf_distance(a, b) >= 0.0);
    CHECK(linf_distance(a, c) <= linf_distance(a, b) + linf_distance(b, c));
    if (linf_distance(a, b) == 0.0) CHECK(a.entries() == b.entries());
  }
}

TEST_CASE("entrywise order test agrees with the constructive morphism search") {
  std::mt19937_64 rng(67);
  int comparable = 0;
  int incomparable = 0;
  for (int rep = 0; rep < 80; ++rep) {
    int n = 2 + static_cast<int>(rng() % 6);
    PhyloTree a = random_phylo_tree(rng, n);
    PhyloTree b =
        rep % 3 == 0 ? smooth(a, static_cast<double>(rng() % 8))
                     : random_phylo_tree(rng, n);
    bool fast_ab = hom_exists(cophenetic_vector(a), cophenetic_vector(b));
    bool fast_ba = hom_exists(cophenetic_vector(b), cophenetic_vector(a));
    REQUIRE(fast_ab == testing::constructive_hom_exists(a, b));
    REQUIRE(fast_ba == testing::constructive_hom_exists(b, a));
    (fast_ab || fast_ba ? comparable : incomparable) += 1;
  }
  // Both branches of the decision were exercised.
  CHECK(comparable > 0);
  CHECK(incomparable > 0);
}

TEST_CASE("lowering every height admits a morphism from the original") {
  std::mt19937_64 rng(71);
  for (int rep = 0; rep < 20; ++rep) {
    PhyloTree t = random_phylo_tree(rng, 2 + static_cast<int>(rng() % 10));
    PhyloTree s = smooth(t, 3.5);
    CHECK(hom_exists(cophenetic_vector(t), cophenetic_vector(s)));
    CHECK(!hom_exists(cophenetic_vector(s), cophenetic_vector(t)));
  }
}

TEST_CASE("mutual morphisms force equal vectors") {
  std::mt19937_64 rng(73);
  for (int rep = 0; rep < 30; ++rep) {
    int n = 2 + static_cast<int>(rng() % 6);
    CopheneticVector a = cophenetic_vector(random_phylo_tree(rng, n));
    CopheneticVector b = cophenetic_vector(random_phylo_tree(rng, n));
    if (hom_exists(a, b) && hom_exists(b, a)) CHECK(a.entries() == b.entries());
  }
  PhyloTree t = fig_left();
  CopheneticVector v = cophenetic_vector(t);
  CopheneticVector again =
      cophenetic_vector(phylo(serialize(t), HeightConvention::explicit_heights));
  CHECK(hom_exists(v, again));
  CHECK(hom_exists(again, v));
  CHECK(v == again);
}

TEST_CASE("json output") {
  CopheneticVector v = cophenetic_vector(phylo("(A:1,B:1);"));
  CHECK(to_json(v) == R"({"labels":["A","B"],"rows":[[-1,0],[-1]]})");

  // Round-trips through a generic JSON parser bit-exactly at full precision.
  std::mt19937_64 rng(79);
  PhyloTree t = random_phylo_tree(rng, 7);
  CopheneticVector w = cophenetic_vector(t);
  nlohmann::json j = nlohmann::json::parse(to_json(w));
  REQUIRE(j["labels"].size() == 7);
  std::size_t flat = 0;
  for (std::size_t i = 0; i < 7; ++i) {
    REQUIRE(j["rows"][i].size() == 7 - i);
    for (const auto& cell : j["rows"][i])
      CHECK(cell.get<double>() == w.entries()[flat++]);
  }
  CHECK(flat == w.pair_count());
}

TEST_CASE("json respects the significant-digit cap") {
  CopheneticVector v(1, {1.0 / 3.0}, {"A"});
  std::string full = to_json(v);
  std::string capped = to_json(v, 4);
  CHECK(full.find("0.3333333333333333") != std::string::npos);
  CHECK(capped.find("0.3333") != std::string::npos);
  CHECK(capped.find("0.33333") == std::string::npos);
  CHECK(nlohmann::json::parse(capped)["rows"][0][0].get<double>() ==
        doctest::Approx(1.0 / 3.0).epsilon(1e-3));
}

TEST_CASE("csv output quotes awkward labels") {
  CopheneticVector v = cophenetic_vector(phylo("('a,b':1,'c\"d':1);"));
  CHECK(to_csv(v) ==
        "label_i,label_j,height\n"
        "\"a,b\",\"a,b\",-1\n"
        "\"a,b\",\"c\"\"d\",0\n"
        "\"c\"\"d\",\"c\"\"d\",-1\n");
}

TEST_SUITE_END();
