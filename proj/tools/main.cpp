#include <cmath>
#include <cstddef>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cophtree/cophenetic.hpp"
#include "cophtree/decimal.hpp"
#include "cophtree/errors.hpp"
#include "cophtree/interleave.hpp"
#include "cophtree/newick.hpp"

namespace {

using namespace cophtree;

// Invocation-level problems (unreadable files, missing --index, ...);
// distinct from syntax (exit 1) and structural (exit 2) failures.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& out_path, const std::string& content) {
  if (out_path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw UsageError("cannot write file: " + out_path);
  out << content;
}

std::vector<PhyloTree> load_trees(const std::string& path,
                                  HeightConvention convention) {
  const std::string text = read_file(path);
  std::vector<PhyloTree> out;
  for (const NewickNode& node : parse_newick(text))
    out.push_back(to_phylo(node, convention));
  return out;
}

const PhyloTree& pick(const std::vector<PhyloTree>& trees, int index,
                      const std::string& path, const char* flag) {
  if (index < 0) {
    if (trees.size() == 1) return trees[0];
    throw UsageError(path + " contains " + std::to_string(trees.size()) +
                     " trees; " + flag + " is required");
  }
  if (static_cast<std::size_t>(index) >= trees.size())
    throw UsageError(path + ": tree index " + std::to_string(index) +
                     " out of range (file has " +
                     std::to_string(trees.size()) + " trees)");
  return trees[static_cast<std::size_t>(index)];
}

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

std::string json_string(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  out += '"';
  return out;
}

PNorm parse_norm(const std::string& s) {
  if (s == "linf") return PNorm::linf;
  if (s == "l1") return PNorm::l1;
  return PNorm::l2;
}

const char* norm_name(PNorm p) {
  switch (p) {
    case PNorm::l1: return "l1";
    case PNorm::l2: return "l2";
    default: return "linf";
  }
}

// Shared per-subcommand state, bound to CLI11 options.
struct Options {
  std::string path_a;
  std::string path_b;
  int index_a = -1;
  int index_b = -1;
  std::string norm = "linf";
  std::string format;
  std::string out_path;
  double tol = 1e-6;
  double search_tol = 1e-9;
  double epsilon = 0.0;
  int digits = 12;
  bool oracle = false;
  HeightConvention convention = HeightConvention::depth_negative;
};

void add_convention_flag(CLI::App* sub, Options& o) {
  static const std::map<std::string, HeightConvention> k_conventions{
      {"depth-negative", HeightConvention::depth_negative},
      {"leaf-zero", HeightConvention::leaf_zero_ultrametric},
      {"explicit", HeightConvention::explicit_heights}};
  sub->add_option("--convention", o.convention,
                  "How node heights are derived from the file")
      ->transform(CLI::CheckedTransformer(k_conventions, CLI::ignore_case))
      ->default_str("depth-negative");
}

int run_validate(const Options& o) {
  std::vector<PhyloTree> trees = load_trees(o.path_a, o.convention);
  std::string line = std::to_string(trees.size()) +
                     (trees.size() == 1 ? " tree" : " trees") +
                     ", leaf counts:";
  for (std::size_t i = 0; i < trees.size(); ++i)
    line += (i ? ", " : " ") + std::to_string(trees[i].leaf_count());
  std::cout << line << "\n";
  return 0;
}

int run_dist(const Options& o) {
  std::vector<PhyloTree> ta = load_trees(o.path_a, o.convention);
  std::vector<PhyloTree> tb = load_trees(o.path_b, o.convention);
  const PhyloTree& a = pick(ta, o.index_a, o.path_a, "--index-a");
  const PhyloTree& b = pick(tb, o.index_b, o.path_b, "--index-b");
  const PNorm p = parse_norm(o.norm);
  const double d = lp_distance(cophenetic_vector(a), cophenetic_vector(b), p);
  if (!o.oracle) {
    std::cout << format_double(d, o.digits) << "\n";
    return 0;
  }
  if (p != PNorm::linf)
    throw UsageError("--oracle cross-checks the interleaving distance and "
                     "requires --p linf");
  const double engine = phtree_interleaving_distance(a, b, 1e-9);
  const double diff = std::abs(engine - d);
  std::cout << "closed_form " << format_double(d, o.digits) << "\n"
            << "interleaving " << format_double(engine, o.digits) << "\n"
            << "difference " << format_double(diff, o.digits) << "\n";
  return diff > o.tol ? 3 : 0;
}

int run_matrix(const Options& o) {
  std::vector<PhyloTree> trees = load_trees(o.path_a, o.convention);
  const std::size_t k = trees.size();
  for (std::size_t i = 1; i < k; ++i)
    if (trees[i].names() != trees[0].names())
      throw TreeError(TreeErrc::label_set_mismatch,
                      "tree " + std::to_string(i) + " in " + o.path_a +
                          " has a different leaf name set than tree 0");
  std::vector<CopheneticVector> vectors;
  vectors.reserve(k);
  for (const PhyloTree& t : trees) vectors.push_back(cophenetic_vector(t));
  const PNorm p = parse_norm(o.norm);
  std::vector<std::vector<double>> values(k, std::vector<double>(k, 0.0));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      const double d = lp_distance(vectors[i], vectors[j], p);
      values[i][j] = d;
      values[j][i] = d;
    }
  }
  std::vector<std::string> labels(k);
  for (std::size_t i = 0; i < k; ++i)
    labels[i] = o.path_a + ":" + std::to_string(i);

  std::string out;
  if (o.format == "json") {
    out = "{\"labels\":[";
    for (std::size_t i = 0; i < k; ++i) {
      if (i) out += ',';
      out += json_string(labels[i]);
    }
    out += "],\"metric\":\"";
    out += norm_name(p);
    out += "\",\"values\":[";
    for (std::size_t i = 0; i < k; ++i) {
      if (i) out += ',';
      out += '[';
      for (std::size_t j = 0; j < k; ++j) {
        if (j) out += ',';
        out += format_double(values[i][j], o.digits);
      }
      out += ']';
    }
    out += "]}";
  } else {
    for (const std::string& l : labels) out += "," + csv_field(l);
    out += '\n';
    for (std::size_t i = 0; i < k; ++i) {
      out += csv_field(labels[i]);
      for (std::size_t j = 0; j < k; ++j)
        out += "," + format_double(values[i][j], o.digits);
      out += '\n';
    }
  }
  write_output(o.out_path, out);
  return 0;
}

int run_vector(const Options& o) {
  std::vector<PhyloTree> trees = load_trees(o.path_a, o.convention);
  const PhyloTree& t = pick(trees, o.index_a, o.path_a, "--index");
  const CopheneticVector v = cophenetic_vector(t);
  write_output(o.out_path, o.format == "csv" ? to_csv(v, o.digits)
                                             : to_json(v, o.digits) + "\n");
  return 0;
}

int run_smooth(const Options& o) {
  std::vector<PhyloTree> trees = load_trees(o.path_a, o.convention);
  const PhyloTree& t = pick(trees, o.index_a, o.path_a, "--index");
  write_output(o.out_path, serialize(smooth(t, o.epsilon)) + "\n");
  return 0;
}

int run_hom(const Options& o) {
  std::vector<PhyloTree> ta = load_trees(o.path_a, o.convention);
  std::vector<PhyloTree> tb = load_trees(o.path_b, o.convention);
  const CopheneticVector va =
      cophenetic_vector(pick(ta, o.index_a, o.path_a, "--index-a"));
  const CopheneticVector vb =
      cophenetic_vector(pick(tb, o.index_b, o.path_b, "--index-b"));
  const bool ab = hom_exists(va, vb);
  const bool ba = hom_exists(vb, va);
  if (ab && ba)
    std::cout << "both (equal)\n";
  else if (ab)
    std::cout << "A→B\n";
  else if (ba)
    std::cout << "B→A\n";
  else
    std::cout << "incomparable\n";
  return 0;
}

int run_interleave(const Options& o) {
  std::vector<PhyloTree> ta = load_trees(o.path_a, o.convention);
  std::vector<PhyloTree> tb = load_trees(o.path_b, o.convention);
  const PhyloTree& a = pick(ta, o.index_a, o.path_a, "--index-a");
  const PhyloTree& b = pick(tb, o.index_b, o.path_b, "--index-b");
  const double d = phtree_interleaving_distance(a, b, o.search_tol);
  const auto cert = is_interleaved(PhTreePoset{}, a, b, d);
  if (!cert)
    throw std::logic_error("search returned an uncertified epsilon");
  std::cout << to_json(*cert, o.digits) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cophenetic and interleaving distances between labeled "
               "merge trees"};
  app.require_subcommand(1);
  Options o;
  int (*run)(const Options&) = nullptr;

  CLI::App* validate =
      app.add_subcommand("validate", "Parse and validate every tree in a file");
  validate->add_option("path", o.path_a, "Newick file")->required();
  add_convention_flag(validate, o);
  validate->callback([&] { run = run_validate; });

  CLI::App* dist = app.add_subcommand(
      "dist", "Distance between two trees, optionally cross-checked against "
              "the interleaving engine");
  dist->add_option("pathA", o.path_a, "first Newick file")->required();
  dist->add_option("pathB", o.path_b, "second Newick file")->required();
  dist->add_option("--index-a", o.index_a, "tree index within pathA");
  dist->add_option("--index-b", o.index_b, "tree index within pathB");
  dist->add_option("--p", o.norm, "norm: linf, l1 or l2")
      ->check(CLI::IsMember({"linf", "l1", "l2"}))
      ->default_str("linf");
  dist->add_flag("--oracle", o.oracle,
                 "also run the interleaving binary search and compare");
  dist->add_option("--tol", o.tol,
                   "allowed |closed form - engine| before exit code 3")
      ->default_str("1e-6");
  dist->add_option("--digits", o.digits, "significant digits in output")
      ->default_str("12");
  add_convention_flag(dist, o);
  dist->callback([&] { run = run_dist; });

  CLI::App* matrix =
      app.add_subcommand("matrix", "All-pairs distance matrix over one file");
  matrix->add_option("path", o.path_a, "multi-tree Newick file")->required();
  matrix->add_option("--p", o.norm, "norm: linf, l1 or l2")
      ->check(CLI::IsMember({"linf", "l1", "l2"}))
      ->default_str("linf");
  matrix->add_option("--out", o.out_path, "output file (default stdout)");
  matrix->add_option("--format", o.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->default_str("csv");
  matrix->add_option("--digits", o.digits, "significant digits in output")
      ->default_str("12");
  add_convention_flag(matrix, o);
  matrix->callback([&] { run = run_matrix; });

  CLI::App* vector_cmd =
      app.add_subcommand("vector", "Cophenetic vector of one tree");
  vector_cmd->add_option("path", o.path_a, "Newick file")->required();
  vector_cmd->add_option("--index", o.index_a, "tree index within the file");
  vector_cmd->add_option("--format", o.format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}))
      ->default_str("json");
  vector_cmd->add_option("--out", o.out_path, "output file (default stdout)");
  vector_cmd->add_option("--digits", o.digits, "significant digits in output")
      ->default_str("12");
  add_convention_flag(vector_cmd, o);
  vector_cmd->callback([&] { run = run_vector; });

  CLI::App* smooth_cmd = app.add_subcommand(
      "smooth", "Shift all heights down by epsilon and reserialize");
  smooth_cmd->add_option("path", o.path_a, "Newick file")->required();
  smooth_cmd->add_option("--index", o.index_a, "tree index within the file");
  smooth_cmd->add_option("--epsilon", o.epsilon, "shift amount, >= 0")
      ->required();
  smooth_cmd->add_option("--out", o.out_path, "output file (default stdout)");
  add_convention_flag(smooth_cmd, o);
  smooth_cmd->callback([&] { run = run_smooth; });

  CLI::App* hom = app.add_subcommand(
      "hom", "Which direction admits a label-preserving morphism");
  hom->add_option("pathA", o.path_a, "first Newick file")->required();
  hom->add_option("pathB", o.path_b, "second Newick file")->required();
  hom->add_option("--index-a", o.index_a, "tree index within pathA");
  hom->add_option("--index-b", o.index_b, "tree index within pathB");
  add_convention_flag(hom, o);
  hom->callback([&] { run = run_hom; });

  CLI::App* interleave = app.add_subcommand(
      "interleave", "Interleaving distance with a JSON certificate");
  interleave->add_option("pathA", o.path_a, "first Newick file")->required();
  interleave->add_option("pathB", o.path_b, "second Newick file")->required();
  interleave->add_option("--index-a", o.index_a, "tree index within pathA");
  interleave->add_option("--index-b", o.index_b, "tree index within pathB");
  interleave->add_option("--tol", o.search_tol, "binary search precision")
      ->default_str("1e-9");
  interleave->add_option("--digits", o.digits,
                         "significant digits in output")
      ->default_str("12");
  add_convention_flag(interleave, o);
  interleave->callback([&] { run = run_interleave; });

  try {
    app.parse(argc, argv);
    return run(o);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 4;
  } catch (const ParseError& e) {
    std::cerr << "syntax error at byte " << e.position() << ": " << e.what()
              << "\n";
    return 1;
  } catch (const TreeError& e) {
    std::cerr << "invalid tree: " << e.what() << "\n";
    return 2;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  }
}
