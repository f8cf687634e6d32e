// pavecount: command-line driver for the counting engine, censuses, bound
// checks and ratio tables.

#include "pavecount/pavecount.hpp"

#include <CLI11.hpp>
#include <json.hpp>
#include <openssl/evp.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace {

using namespace pavecount;
using nlohmann::json;

enum ExitCode : int { kOk = 0, kInternal = 1, kParameter = 2, kTimeout = 3, kViolation = 4 };

const auto g_process_start = std::chrono::steady_clock::now();

std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr);
  std::string out;
  char buf[3];
  for (unsigned i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", md[i]);
    out += buf;
  }
  return out;
}

std::string utc_now() {
  const auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

struct Common {
  double budget_s = kDefaultBudgetSeconds;
  unsigned threads = std::max(1U, std::thread::hardware_concurrency());
  std::size_t vertex_cap = kDefaultVertexCap;
  bool memo = false;

  CountOptions count_options() const {
    CountOptions c;
    c.budget_s = budget_s;
    c.threads = threads;
    c.memo = memo;
    return c;
  }
  GraphOptions graph_options() const { return GraphOptions{vertex_cap}; }
  json to_json() const {
    return {{"budget_s", budget_s}, {"threads", threads}, {"vertex_cap", vertex_cap}, {"memo", memo}};
  }
};

void add_common(CLI::App* app, Common& c) {
  app->add_option("--budget-s", c.budget_s, "time budget in seconds (env PAVECOUNT_BUDGET_S)");
  app->add_option("--threads", c.threads, "worker threads");
  app->add_option("--vertex-cap", c.vertex_cap, "maximum graph size");
  app->add_flag("--memo", c.memo, "cache subgraph counts");
}

/// Writes `content` to `path` plus `<path>.manifest.json`.
void write_with_manifest(const std::string& path, const std::string& content, const std::string& command,
                         const json& parameters, const json& extra, const std::string& started) {
  {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParameterError("cannot open output file " + path);
    out << content;
  }
  json manifest = {{"command", command},
                   {"parameters", parameters},
                   {"tool_version", kVersion},
                   {"started", started},
                   {"finished", utc_now()},
                   {"wall_ms", std::chrono::duration_cast<std::chrono::milliseconds>(
                                   std::chrono::steady_clock::now() - g_process_start)
                                   .count()},
                   {"output", std::filesystem::path(path).filename().string()},
                   {"content_sha256", sha256_hex(content)}};
  for (auto it = extra.begin(); it != extra.end(); ++it) manifest[it.key()] = it.value();
  std::ofstream m(path + ".manifest.json");
  m << manifest.dump(2) << '\n';
}

// -- count -------------------------------------------------------------------

struct CountArgs {
  int n = 0;
  int r = 0;
  int induced_vh = 0;
  int induced_fiber = -1;
  bool d6 = false;
};

int run_count(const CountArgs& a, const Common& c) {
  const auto gopt = c.graph_options();
  VertexGraph g;
  if (a.d6) {
    g = distance_six_graph(a.n, a.r, gopt);
  } else {
    const VertexGraph j = johnson_graph(a.n, a.r, gopt);
    if (a.induced_vh > 0) {
      if (!vh_hypothesis(a.n, a.r, a.induced_vh))
        throw ParameterError("--induced-vh t needs 2 <= r < n and 1 <= t <= n-r-1");
      g = induced(j, vh_vertex_set(j, KSubset::from_mask(a.n, detail::low_bits(a.r + a.induced_vh))));
    } else if (a.induced_fiber >= 0) {
      g = induced(j, gs_fiber(j, a.induced_fiber));
    } else {
      g = j;
    }
  }
  std::cout << to_json(count_stable_sets(g, c.count_options())).dump() << '\n';
  return kOk;
}

// -- census ------------------------------------------------------------------

struct CensusArgs {
  int n = 0;
  int r = 0;
  std::string kind = "paving";
  std::string out;
  std::optional<std::uint64_t> cap;
};

int run_census(const CensusArgs& a, const Common& c) {
  const std::string started = utc_now();
  CensusOptions opt;
  opt.budget_s = c.budget_s;
  opt.cap = a.cap;
  std::string lines;
  std::uint64_t written = 0;
  auto emit = [&](const Matroid& m) {
    lines += to_json(m).dump();
    lines += '\n';
    ++written;
    return true;
  };

  StreamSummary s;
  if (a.kind == "paving") {
    s = census_paving(a.n, a.r, emit, opt);
  } else if (a.kind == "sparse") {
    s = census_sparse_paving(a.n, a.r, emit, opt, c.graph_options());
  } else if (a.kind == "nonsparse") {
    if (a.r >= 1 && a.r < a.n) {
      s = enumerate_hyperplane_families(
          a.n, a.r,
          [&](const std::vector<Mask>& fam) {
            const bool large = std::any_of(fam.begin(), fam.end(), [&](Mask h) { return std::popcount(h) > a.r; });
            if (!large) return true;
            return emit(build_from_hyperplane_family(HyperplaneFamily(a.n, a.r, detail::to_subsets(a.n, fam))));
          },
          opt);
    }
  } else {
    throw ParameterError("--kind must be paving, sparse or nonsparse");
  }

  const json params = {{"n", a.n}, {"r", a.r}, {"kind", a.kind}};
  json summary = {{"kind", a.kind}, {"n", a.n}, {"r", a.r}, {"count", written}, {"truncated", s.truncated}};
  if (!a.out.empty())
    write_with_manifest(a.out, lines, "census", params,
                        {{"budgets", c.to_json()},
                         {"caps", a.cap ? json(*a.cap) : json(nullptr)},
                         {"totals", {{"records", written}, {"truncated", s.truncated}}}},
                        started);
  else
    std::cout << lines;
  (a.out.empty() ? std::cerr : std::cout) << summary.dump() << '\n';
  return kOk;
}

// -- verify ------------------------------------------------------------------

struct VerifyArgs {
  std::string suite = "all";
  int nmax = 6;
  std::string out;
  std::size_t max_code = 4;
  std::uint64_t per_code_cap = 20000;
};

bool suite_on(const std::string& chosen, const char* name) { return chosen == "all" || chosen == name; }

std::vector<BoundCheck> run_suites(const VerifyArgs& a, BoundsLab& lab) {
  static const std::vector<std::string> kSuites = {"all", "vh", "shearer", "amplified", "d6",
                                                   "hybrid", "gs", "induced", "sparse"};
  if (std::find(kSuites.begin(), kSuites.end(), a.suite) == kSuites.end())
    throw ParameterError("unknown suite '" + a.suite + "'");
  const GraphOptions gopt = lab.options().graph;
  std::vector<BoundCheck> rows;
  auto append = [&rows](std::vector<BoundCheck> more) {
    for (auto& r : more) rows.push_back(std::move(r));
  };

  if (suite_on(a.suite, "vh"))
    for (int n = 3; n <= a.nmax; ++n)
      for (int r = 2; r < n; ++r)
        for (int t = 1; t <= n - r - 1; ++t) {
          const auto total = binomial_u64(n, r + t);
          // canonical H plus three evenly spaced others
          for (std::uint64_t idx : {std::uint64_t{0}, total / 4, total / 2, (3 * total) / 4})
            rows.push_back(lab.check_vh_size(n, r, t, subset_unrank(n, r + t, idx)));
        }

  if (suite_on(a.suite, "shearer"))
    for (int n = 2; n <= a.nmax; ++n)
      for (int r = 1; r < n; ++r)
        if (binomial_u64(n, r) <= gopt.vertex_cap) append(lab.check_shearer_suite(n, r));

  if (suite_on(a.suite, "induced"))
    for (int n = 4; n <= a.nmax; ++n)
      for (int r = 2; r < n; ++r)
        for (int t = 1; t <= n - r - 1; ++t) append(lab.check_induced_count_bound(n, r, t));

  if (suite_on(a.suite, "amplified"))
    for (int n = 4; n <= a.nmax; ++n) append(lab.check_amplified(n));

  if (suite_on(a.suite, "gs"))
    for (int n = 2; n <= a.nmax; ++n)
      for (int r = 1; r < n; ++r)
        if (binomial_u64(n, r) <= gopt.vertex_cap) append(lab.check_gs_bound(n, r));

  if (suite_on(a.suite, "d6"))
    for (int n = 5; n <= a.nmax; ++n)
      for (int r = 2; r <= n - 3; ++r) append(lab.check_distance_six(n, r));

  if (suite_on(a.suite, "hybrid"))
    for (int n = 5; n <= a.nmax; ++n)
      for (int r = 2; r <= n - 3; ++r) append(lab.check_hybrid_sum(n, r));

  if (suite_on(a.suite, "sparse"))
    for (int n = 2; n <= a.nmax; ++n)
      for (int r = 1; r < n; ++r)
        if (binomial_u64(n, r) <= 64) rows.push_back(lab.check_sparse_census(n, r));

  return rows;
}

int run_verify(const VerifyArgs& a, const Common& c) {
  const std::string started = utc_now();
  LabOptions lo;
  lo.budget_s = c.budget_s;
  lo.threads = c.threads;
  lo.graph = c.graph_options();
  lo.hybrid.max_code_size = a.max_code;
  lo.hybrid.per_code_stable_cap = a.per_code_cap;
  lo.hybrid.budget_s = c.budget_s;
  BoundsLab lab(lo);
  const auto rows = run_suites(a, lab);

  std::string csv = std::string(kBoundCsvHeader) + "\n";
  bool failed = false;
  std::uint64_t holds = 0, na = 0;
  for (const auto& r : rows) {
    csv += to_csv_row(r) + "\n";
    failed = failed || r.verdict == Verdict::fails;
    holds += r.verdict == Verdict::holds;
    na += r.verdict == Verdict::not_applicable;
  }
  if (!a.out.empty()) {
    json details = json::array();
    for (const auto& r : rows) details.push_back(to_json(r));
    write_with_manifest(a.out, csv, "verify", {{"suite", a.suite}, {"nmax", a.nmax}},
                        {{"budgets", c.to_json()},
                         {"caps", {{"max_code_size", a.max_code}, {"per_code_stable_cap", a.per_code_cap}}},
                         {"totals", {{"rows", rows.size()}, {"holds", holds}, {"not_applicable", na}}},
                         {"rows", details}},
                        started);
  } else {
    std::cout << csv;
  }
  return failed ? kViolation : kOk;
}

// -- table -------------------------------------------------------------------

int run_table(int nmax, const std::string& out, const Common& c) {
  const std::string started = utc_now();
  LabOptions lo;
  lo.budget_s = c.budget_s;
  lo.threads = c.threads;
  lo.graph = c.graph_options();
  BoundsLab lab(lo);
  const auto rows = ratio_table(nmax, lab);
  std::string csv = std::string(kRatioCsvHeader) + "\n";
  for (const auto& r : rows) csv += to_csv_row(r) + "\n";
  if (!out.empty()) {
    std::uint64_t incomplete = 0;
    for (const auto& r : rows) incomplete += !r.complete();
    write_with_manifest(out, csv, "table", {{"nmax", nmax}},
                        {{"budgets", c.to_json()}, {"totals", {{"rows", rows.size()}, {"incomplete", incomplete}}}},
                        started);
  } else {
    std::cout << csv;
  }
  return kOk;
}

// -- graph -------------------------------------------------------------------

int run_graph(int n, int r, bool d6, int induced_vh, const std::string& out, const Common& c) {
  const std::string started = utc_now();
  VertexGraph g = d6 ? distance_six_graph(n, r, c.graph_options()) : johnson_graph(n, r, c.graph_options());
  if (!d6 && induced_vh > 0) {
    if (!vh_hypothesis(n, r, induced_vh)) throw ParameterError("--induced-vh t needs 2 <= r < n and 1 <= t <= n-r-1");
    g = induced(g, vh_vertex_set(g, KSubset::from_mask(n, detail::low_bits(r + induced_vh))));
  }
  std::ostringstream adj;
  write_adjacency(adj, g);
  if (out.empty()) {
    std::cout << adj.str();
    return kOk;
  }
  const json params = {{"n", n}, {"r", r}, {"d6", d6}, {"induced_vh", induced_vh}};
  write_with_manifest(out, adj.str(), "graph", params, {{"budgets", c.to_json()}}, started);
  std::ofstream(out + ".labels.json") << labels_json(g).dump() << '\n';
  return kOk;
}

// -- construct ---------------------------------------------------------------

struct ConstructArgs {
  std::string kind = "one-large";
  int n = 0;
  int r = 0;
  int t = 1;
  std::size_t max_code = 4;
  std::optional<std::uint64_t> cap;
  std::string out;
};

int run_construct(const ConstructArgs& a, const Common& c) {
  const std::string started = utc_now();
  std::string lines;
  auto emit = [&](const ConstructionRecord& rec) {
    lines += to_json(rec).dump();
    lines += '\n';
    return true;
  };
  json totals;
  if (a.kind == "one-large") {
    const auto s = enumerate_one_large_hyperplane(a.n, a.r, a.t, emit, a.cap, c.graph_options());
    totals = {{"records", s.emitted}, {"distinct", s.distinct}, {"truncated", s.truncated}};
  } else if (a.kind == "d6" || a.kind == "hybrid") {
    HybridCaps caps;
    caps.max_code_size = a.max_code;
    caps.budget_s = c.budget_s;
    if (a.kind == "d6") caps.per_code_stable_cap = 1;  // I = empty only
    else caps.per_code_stable_cap = a.cap;
    std::uint64_t written = 0;
    const auto s = enumerate_hybrid(
        a.n, a.r, caps,
        [&](const ConstructionRecord& rec) {
          ConstructionRecord copy = rec;
          if (a.kind == "d6") copy.provenance = Provenance::distance_six;
          emit(copy);
          ++written;
        },
        c.graph_options());
    totals = {{"records", written}, {"distinct", s.distinct}, {"codes", s.codes},
              {"sum", to_decimal(s.sum)}, {"partial", s.partial()}};
  } else {
    throw ParameterError("--kind must be one-large, d6 or hybrid");
  }
  const json params = {{"kind", a.kind}, {"n", a.n}, {"r", a.r}, {"t", a.t}, {"max_code", a.max_code}};
  if (a.out.empty()) {
    std::cout << lines;
  } else {
    write_with_manifest(a.out, lines, "construct", params, {{"budgets", c.to_json()}, {"totals", totals}}, started);
    std::cout << totals.dump() << '\n';
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pavecount: exact counting of stable sets and paving matroids"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  Common common;
  if (const char* env = std::getenv("PAVECOUNT_BUDGET_S")) {
    try {
      common.budget_s = std::stod(env);
    } catch (const std::exception&) {
      std::cerr << "error: PAVECOUNT_BUDGET_S is not a number\n";
      return kParameter;
    }
  }

  CountArgs count_args;
  auto* count = app.add_subcommand("count", "count stable sets of J(n,r), an induced subgraph, or G^(6)");
  count->add_option("n", count_args.n)->required();
  count->add_option("r", count_args.r)->required();
  auto* vh = count->add_option("--induced-vh", count_args.induced_vh, "count J(n,r)[V_H] with H = {1..r+t}");
  auto* fib = count->add_option("--induced-fiber", count_args.induced_fiber, "count J(n,r)[U_{n,r,k}]");
  auto* d6 = count->add_flag("--d6", count_args.d6, "count G^(6)_{n,r+1}");
  vh->excludes(fib)->excludes(d6);
  fib->excludes(d6);
  add_common(count, common);

  CensusArgs census_args;
  auto* census = app.add_subcommand("census", "enumerate paving / sparse paving matroids as JSON lines");
  census->add_option("n", census_args.n)->required();
  census->add_option("r", census_args.r)->required();
  census->add_option("--kind", census_args.kind)->check(CLI::IsMember({"paving", "sparse", "nonsparse"}));
  census->add_option("--out", census_args.out, "output file (a manifest is written next to it)");
  census->add_option("--cap", census_args.cap, "stop after this many records");
  add_common(census, common);

  VerifyArgs verify_args;
  auto* verify = app.add_subcommand("verify", "evaluate the finite-n inequalities; CSV report");
  verify->add_option("--suite", verify_args.suite, "all|vh|shearer|amplified|d6|hybrid|gs|induced|sparse");
  verify->add_option("--nmax", verify_args.nmax);
  verify->add_option("--out", verify_args.out);
  verify->add_option("--max-code", verify_args.max_code, "hybrid: largest |C|");
  verify->add_option("--per-code-cap", verify_args.per_code_cap, "hybrid: stable sets materialized per C");
  add_common(verify, common);

  int table_nmax = 7;
  std::string table_out;
  auto* table = app.add_subcommand("table", "middle-rank ratio table (exploratory)");
  table->add_option("--nmax", table_nmax);
  table->add_option("--out", table_out);
  add_common(table, common);

  int gn = 0, gr = 0, g_vh = 0;
  bool g_d6 = false;
  std::string g_out;
  auto* graph = app.add_subcommand("graph", "export J(n,r), J(n,r)[V_H] or G^(6) as an edge list");
  graph->add_option("n", gn)->required();
  graph->add_option("r", gr)->required();
  graph->add_flag("--d6", g_d6);
  graph->add_option("--induced-vh", g_vh);
  graph->add_option("--out", g_out, "adjacency file; labels go to <out>.labels.json");
  add_common(graph, common);

  ConstructArgs cons_args;
  auto* cons = app.add_subcommand("construct", "emit construction records as JSON lines");
  cons->add_option("n", cons_args.n)->required();
  cons->add_option("r", cons_args.r)->required();
  cons->add_option("--kind", cons_args.kind)->check(CLI::IsMember({"one-large", "d6", "hybrid"}));
  cons->add_option("--t", cons_args.t);
  cons->add_option("--max-code", cons_args.max_code);
  cons->add_option("--cap", cons_args.cap);
  cons->add_option("--out", cons_args.out);
  add_common(cons, common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kParameter;
  }

  const std::string census_out = census_args.out;
  try {
    if (*count) return run_count(count_args, common);
    if (*census) return run_census(census_args, common);
    if (*verify) return run_verify(verify_args, common);
    if (*table) return run_table(table_nmax, table_out, common);
    if (*graph) return run_graph(gn, gr, g_d6, g_vh, g_out, common);
    if (*cons) return run_construct(cons_args, common);
  } catch (const TimeoutError& e) {
    if (*census && !census_out.empty()) std::filesystem::remove(census_out);
    std::cout << json{{"error", "timeout"}, {"message", e.what()}, {"nodes", e.nodes()},
                      {"elapsed_ms", static_cast<std::int64_t>(e.elapsed_ms())}}.dump()
              << '\n';
    return kTimeout;
  } catch (const ParameterError& e) {
    std::cerr << "parameter error: " << e.what() << '\n';
    return kParameter;
  } catch (const ResourceError& e) {
    std::cerr << "resource error: " << e.what() << '\n';
    return kParameter;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInternal;
  }
  return kInternal;
}
