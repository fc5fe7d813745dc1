#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "clipperplus/bench.hpp"
#include "clipperplus/dimacs.hpp"
#include "oracles.hpp"

using namespace clipperplus;
using namespace clipperplus::testing;

namespace {

std::string write_temp(const std::string& name, const std::string& text) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path) << text;
  return path.string();
}

std::size_t error_line(std::string_view text) {
  try {
    parse_dimacs(text);
  } catch (const ParseError& e) {
    return e.line();
  }
  return 0;
}

}  // namespace

TEST(Dimacs, FiveVertexGraph) {
  const auto dg = parse_dimacs("p edge 5 4\ne 1 4\ne 2 3\ne 2 5\ne 3 5");
  EXPECT_EQ(dg.graph, five_vertex_graph());
  EXPECT_TRUE(dg.warnings.empty());
}

TEST(Dimacs, CommentsAndBlankLinesIgnored) {
  const auto dg = parse_dimacs("c hello\nc world\n\np edge 5 4\r\ne 1 4\r\nc mid\ne 2 3\ne 2 5\ne 3 5\n");
  EXPECT_EQ(dg.graph, five_vertex_graph());
}

TEST(Dimacs, DuplicatesCollapseWithWarning) {
  const auto dg = parse_dimacs("p edge 3 5\ne 1 2\ne 2 1\ne 1 2\ne 2 3\n");
  EXPECT_EQ(dg.graph.edge_count(), 2U);
  EXPECT_EQ(dg.warnings.size(), 1U);
}

TEST(Dimacs, CountMismatchWarns) {
  const auto dg = parse_dimacs("p edge 3 7\ne 1 2\n");
  EXPECT_EQ(dg.declared_edges, 7U);
  EXPECT_EQ(dg.warnings.size(), 1U);
}

TEST(Dimacs, ErrorsCarryLineNumbers) {
  EXPECT_EQ(error_line("p edge 5 4\ne 9 1\n"), 2U);
  EXPECT_EQ(error_line("c x\ne 1 2\n"), 2U);
  EXPECT_EQ(error_line("p edge 5 4\ne 1 x\n"), 2U);
  EXPECT_EQ(error_line("p edge 5 4\ne 1 2.5\n"), 2U);
  EXPECT_EQ(error_line("p edge 5 4\ne 2 2\n"), 2U);
  EXPECT_EQ(error_line("p edge 5 4\np edge 5 4\n"), 2U);
  EXPECT_EQ(error_line("p edge five 4\n"), 1U);
  EXPECT_EQ(error_line("p edge 5 4\nq 1 2\n"), 2U);
  EXPECT_EQ(error_line("p edge 5 4\ne 0 1\n"), 2U);
  EXPECT_THROW(parse_dimacs("c only comments\n"), ParseError);
  EXPECT_THROW(parse_dimacs(""), ParseError);
}

TEST(Dimacs, RoundTripThroughWriter) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Graph g = random_graph(1 + seed * 7, 0.4, seed);
    EXPECT_EQ(parse_dimacs(to_dimacs(g)).graph, g);
  }
}

TEST(Dimacs, ReadFileReportsPathAndLine) {
  const auto path = write_temp("clipperplus_bad.clq", "p edge 3 1\ne 1 4\n");
  try {
    read_dimacs(path);
    FAIL();
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find(path + ":2:"), std::string::npos) << e.what();
  }
  std::filesystem::remove(path);
  EXPECT_THROW(read_dimacs("/nonexistent/graph.clq"), InputError);
}

TEST(Bench, AlgorithmNames) {
  for (auto a : {Algorithm::kGreedy, Algorithm::kRelax, Algorithm::kClipperPlus, Algorithm::kExact}) {
    EXPECT_EQ(parse_algorithm(to_string(a)), a);
  }
  EXPECT_THROW(parse_algorithm("pmc"), InputError);
}

TEST(Bench, RunAlgorithmValidates) {
  const Graph g = random_graph(40, 0.5, 1);
  for (auto a : {Algorithm::kGreedy, Algorithm::kRelax, Algorithm::kClipperPlus, Algorithm::kExact}) {
    const auto o = run_algorithm(g, a);
    EXPECT_TRUE(validate_clique(g, o.clique).is_maximal) << to_string(a);
    EXPECT_GE(o.runtime_ms, 0.0);
  }
}

TEST(Bench, CsvSchema) {
  BenchRecord r;
  r.graph_id = "g";
  r.n = 5;
  r.sparsity = 0.6;
  r.algo = "clipper+";
  r.clique_size = 3;
  r.runtime_ms = 0.25;
  std::ostringstream out;
  write_csv(out, {r});
  EXPECT_EQ(out.str(), std::string(kCsvHeader) + "\ng,5,0.600000,clipper+,3,,,0.250,,0\n");
  r.omega_gt = 4;
  r.r = 0.75;
  r.seed = 9;
  r.early_terminated = true;
  EXPECT_EQ(to_csv_row(r), "g,5,0.600000,clipper+,3,4,0.750000,0.250,9,1");
}

TEST(Bench, DimacsRecords) {
  const auto path = write_temp("five_vertex.clq", to_dimacs(five_vertex_graph()));
  const std::map<std::string, std::size_t> omega{{"five_vertex", 3}};
  const auto recs =
      bench_dimacs({path}, {Algorithm::kGreedy, Algorithm::kRelax, Algorithm::kClipperPlus}, omega);
  ASSERT_EQ(recs.size(), 3U);
  for (const auto& r : recs) {
    EXPECT_EQ(r.graph_id, "five_vertex");
    EXPECT_EQ(r.n, 5U);
    EXPECT_DOUBLE_EQ(r.sparsity, 0.6);
    EXPECT_EQ(r.clique_size, 3U);
    EXPECT_EQ(r.omega_gt, 3U);
    EXPECT_EQ(r.r, 1.0);
  }
  EXPECT_EQ(recs[0].algo, "clipper+");
  EXPECT_TRUE(recs[0].early_terminated);
  EXPECT_TRUE(bench_dimacs({path}, {}, omega).empty());
  const auto no_gt = bench_dimacs({path}, {Algorithm::kGreedy}, {});
  EXPECT_FALSE(no_gt[0].omega_gt.has_value());
  EXPECT_FALSE(no_gt[0].r.has_value());
  std::filesystem::remove(path);
}

TEST(Bench, DefaultOmegaTable) {
  const auto t = default_dimacs_omega();
  EXPECT_EQ(t.at("C125.9"), 34U);
  EXPECT_EQ(t.at("brock200_2"), 12U);
  EXPECT_EQ(t.at("p_hat300-1"), 8U);
  EXPECT_EQ(dimacs_graph_id("/data/dimacs/C125.9.clq"), "C125.9");
  EXPECT_EQ(dimacs_graph_id("keller4"), "keller4");
}

TEST(Bench, SweepConfigValidation) {
  SweepConfig c;
  c.step_pct = 0;
  EXPECT_THROW(c.validate(), InputError);
  c = {};
  c.trials = 0;
  EXPECT_THROW(c.validate(), InputError);
  c = {};
  EXPECT_EQ(c.increments().size(), 10U);
  c.stop_pct = 98;
  c.step_pct = 2;
  EXPECT_EQ(c.increments().size(), 50U);
}

TEST(Bench, SyntheticCountsOrderAndDeterminism) {
  SweepConfig c;
  c.trials = 5;
  c.scene = SceneParams{60, 0.2, 60, 1.0, 30, 0.0, 0};
  c.threads = 4;
  const auto a = bench_synthetic(c);
  EXPECT_EQ(a.records.size(), 10U * 5U * 3U);
  EXPECT_EQ(a.summaries.size(), 10U * 3U);
  for (std::size_t i = 1; i < a.records.size(); ++i) {
    const auto& p = a.records[i - 1];
    const auto& q = a.records[i];
    EXPECT_TRUE(std::tie(p.graph_id, p.algo, *p.seed) <= std::tie(q.graph_id, q.algo, *q.seed));
  }
  for (const auto& r : a.records) {
    ASSERT_TRUE(r.omega_gt.has_value());
    EXPECT_LE(r.clique_size, *r.omega_gt);
  }

  c.threads = 1;
  const auto b = bench_synthetic(c);
  ASSERT_EQ(a.records.size(), b.records.size());
  for (std::size_t i = 0; i < a.records.size(); ++i) {
    auto x = a.records[i];
    auto y = b.records[i];
    x.runtime_ms = y.runtime_ms = 0.0;
    EXPECT_EQ(to_csv_row(x), to_csv_row(y));
  }
}

TEST(Bench, SparsityGrowsWithOutliers) {
  SweepConfig c;
  c.trials = 4;
  c.scene = SceneParams{100, 0.2, 100, 1.0, 50, 0.0, 0};
  c.algorithms = {Algorithm::kGreedy};
  const auto res = bench_synthetic(c);
  ASSERT_EQ(res.summaries.size(), 10U);
  EXPECT_EQ(res.summaries.front().mean_sparsity, 0.0);
  EXPECT_GT(res.summaries.back().mean_sparsity, 0.8);
}

TEST(Bench, OracleExhaustionIsFlaggedAndExcluded) {
  SweepConfig c;
  c.start_pct = c.stop_pct = 50;
  c.trials = 2;
  c.scene = SceneParams{60, 0.2, 60, 1.0, 40, 0.0, 0};
  c.exact_budget = 1;
  const auto res = bench_synthetic(c);
  ASSERT_FALSE(res.records.empty());
  for (const auto& r : res.records) {
    EXPECT_TRUE(r.oracle_exhausted);
    EXPECT_FALSE(r.r.has_value());
  }
  for (const auto& s : res.summaries) {
    EXPECT_EQ(s.trials, 0U);
    EXPECT_EQ(s.excluded, 2U);
  }
}
