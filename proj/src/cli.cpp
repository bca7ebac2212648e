#include "flca/cli.hpp"

#include <algorithm>
#include <fstream>
#include <optional>
#include <ostream>
#include <utility>

#include "CLI11.hpp"
#include "flca/ancestry_index.hpp"
#include "flca/bench.hpp"
#include "flca/error.hpp"
#include "flca/flca.hpp"
#include "flca/generator.hpp"
#include "flca/text_format.hpp"
#include "flca/tree.hpp"
#include "flca/verify.hpp"

namespace flca {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitDiscrepancy = 1;
constexpr int kExitParse = 2;
constexpr int kExitUnknownLabel = 3;

struct QueryArgs {
  std::string tree_path;
  std::string query_path;
  bool offline = false;
  bool stats = false;
};

struct GenArgs {
  std::int32_t n = 10;
  std::string shape = "random";
  std::uint64_t seed = 1;
};

int cmd_query(const QueryArgs& args, std::ostream& out, std::ostream& err) {
  const std::string* current_path = &args.tree_path;
  try {
    std::ifstream tree_in(args.tree_path);
    if (!tree_in) {
      err << "cannot open '" << args.tree_path << "'\n";
      return kExitParse;
    }
    const TreeDocument doc = read_tree(tree_in);

    current_path = &args.query_path;
    std::ifstream query_in(args.query_path);
    if (!query_in) {
      err << "cannot open '" << args.query_path << "'\n";
      return kExitParse;
    }
    const std::vector<Query> queries = read_queries(query_in, doc.labels);

    std::optional<AncestryIndex> index;
    std::optional<QueryScratch> scratch;
    if (!args.offline) {
      index.emplace(doc.tree);
      scratch.emplace(doc.tree);
    }
    for (const Query& q : queries) {
      const QuerySet set = QuerySet::make({q.marks.begin(), q.marks.end()},
                                          q.fault_budget, doc.tree);
      const FlcaResult result = args.offline
                                    ? compute_flca_offline(doc.tree, set)
                                    : compute_flca(*index, *scratch, set);
      out << "flca " << q.fault_budget;
      for (const VertexId v : result.representatives) {
        out << ' ' << doc.labels.name(v);
      }
      if (args.stats) {
        out << " calls=" << result.recursion_calls
            << " max_branching=" << result.max_branching;
      }
      out << '\n';
    }
    return kExitOk;
  } catch (const UnknownLabelError& e) {
    err << *current_path << ": " << e.what() << '\n';
    return kExitUnknownLabel;
  } catch (const ParseError& e) {
    err << *current_path << ": " << e.what() << '\n';
    return kExitParse;
  } catch (const Error& e) {
    err << *current_path << ": " << e.what() << '\n';
    return kExitParse;
  }
}

int cmd_verify(const VerifyOptions& options, std::ostream& out,
               std::ostream& err) {
  try {
    const VerifyResult result = run_verification(options);
    out << result.report;
    return result.ok ? kExitOk : kExitDiscrepancy;
  } catch (const Error& e) {
    err << e.what() << '\n';
    return kExitParse;  // an infeasible guard combination is a flag problem
  }
}

int cmd_gen(const GenArgs& args, std::ostream& out) {
  const TreeShape shape = *parse_tree_shape(args.shape);  // validated by CLI
  TreeDocument doc{
      RootedTree::from_parents(make_parent_list(shape, args.n, args.seed)),
      LabelMap{}};
  for (VertexId v = 0; v < doc.tree.size(); ++v) {
    doc.labels.intern(std::to_string(v));
  }
  write_tree(out, doc);
  return kExitOk;
}

int cmd_bench(const BenchOptions& options, std::ostream& out) {
  for (const BenchRow& row : run_bench(options)) {
    out << "bench," << row.n << ',' << row.fault_budget << ',' << row.marks
        << ',' << row.build_ns << ',' << row.query_ns << '\n';
  }
  return kExitOk;
}

}  // namespace

int run_cli(std::vector<std::string> args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"f-fault lowest common ancestor queries over rooted trees"};
  app.name("flca");
  app.require_subcommand(1);

  QueryArgs query_args;
  CLI::App* query_cmd = app.add_subcommand(
      "query", "answer queries from a tree file and a query file");
  query_cmd->add_option("tree", query_args.tree_path, "tree file")->required();
  query_cmd->add_option("queries", query_args.query_path, "query file")
      ->required();
  query_cmd->add_flag("--offline", query_args.offline,
                      "use the index-free single-pass solver");
  query_cmd->add_flag("--stats", query_args.stats,
                      "append per-query call and branching counts");

  VerifyOptions verify_options;
  CLI::App* verify_cmd = app.add_subcommand(
      "verify", "certify the solver against the brute-force ground truth");
  verify_cmd->add_option("--n-max", verify_options.n_max, "largest tree size")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  verify_cmd
      ->add_option("--f-max", verify_options.f_max, "largest fault budget")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  verify_cmd
      ->add_option("--instances", verify_options.instances,
                   "number of random instances")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  verify_cmd->add_option("--seed", verify_options.seed, "random seed")
      ->capture_default_str();
  verify_cmd->add_flag("--edge-faults", verify_options.edge_faults,
                       "also enumerate mixed vertex/edge fault sets");
  verify_cmd->add_flag(
      "--corrupt", verify_options.corrupt,
      "negative control: corrupt every answer; the sweep must fail");

  GenArgs gen_args;
  CLI::App* gen_cmd = app.add_subcommand("gen", "emit a generated tree file");
  gen_cmd->add_option("--n", gen_args.n, "vertex count")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  gen_cmd->add_option("--shape", gen_args.shape, "tree shape")
      ->check(CLI::IsMember({"path", "star", "binary", "random"}))
      ->capture_default_str();
  gen_cmd->add_option("--seed", gen_args.seed, "random seed")
      ->capture_default_str();

  BenchOptions bench_options;
  CLI::App* bench_cmd =
      app.add_subcommand("bench", "time preprocessing and queries");
  bench_cmd->add_option("--n", bench_options.n, "tree size")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  bench_cmd->add_option("--f", bench_options.fault_budget, "fault budget")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  bench_cmd
      ->add_option("--marks", bench_options.mark_counts,
                   "mark-set sizes, one output row each")
      ->check(CLI::PositiveNumber);
  bench_cmd->add_option("--repeat", bench_options.repeat, "timing repetitions")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  bench_cmd->add_option("--seed", bench_options.seed, "random seed")
      ->capture_default_str();

  try {
    std::reverse(args.begin(), args.end());  // CLI11 consumes from the back
    app.parse(std::move(args));
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitParse;
  }

  if (query_cmd->parsed()) return cmd_query(query_args, out, err);
  if (verify_cmd->parsed()) return cmd_verify(verify_options, out, err);
  if (gen_cmd->parsed()) return cmd_gen(gen_args, out);
  if (bench_cmd->parsed()) return cmd_bench(bench_options, out);
  return kExitParse;  // unreachable: a subcommand is required
}

}  // namespace flca
