#include "cli.hpp"

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <mutex>
#include <optional>
#include <ostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "sheafcsp/affine.hpp"
#include "sheafcsp/brute_force.hpp"
#include "sheafcsp/cfi.hpp"
#include "sheafcsp/cohomology.hpp"
#include "sheafcsp/errors.hpp"
#include "sheafcsp/graph.hpp"
#include "sheafcsp/random_instances.hpp"
#include "sheafcsp/report.hpp"
#include "sheafcsp/structure_io.hpp"

namespace sheafcsp::cli {

namespace fs = std::filesystem;

namespace {

struct DecideConfig {
  std::string a_path;
  std::string b_path;
  std::size_t k = 3;
  std::string method = "cohomological";
  bool compare = false;
  unsigned jobs = 0;
  std::string out;
};

Method parse_method(const std::string& m) {
  if (m == "classical") return Method::classical;
  if (m == "cohomological") return Method::cohomological;
  throw InputError("unknown method '" + m + "' (expected classical or cohomological)");
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot write " + path);
  f << text;
  if (!f) throw InputError("write failed for " + path);
}

int cmd_decide(Problem problem, const DecideConfig& cfg, std::ostream& out) {
  const Method method = parse_method(cfg.method);
  const Structure a = read_structure_file(cfg.a_path);
  const Structure b = read_structure_file(cfg.b_path);
  CohomOptions opts;
  opts.threads = cfg.jobs;
  const DecisionReport r = decide(problem, method, a, b, cfg.k, cfg.compare, opts);
  const std::string json = to_json(r);
  out << json << '\n';
  if (!cfg.out.empty()) write_text(cfg.out, json + "\n");
  return r.accept ? ExitCode::accept : ExitCode::reject;
}

// A graph argument is a file in the text format or a built-in name.
GraphSpec load_graph(const std::string& arg) {
  if (fs::exists(arg)) return read_graph_file(arg);
  GraphSpec spec;
  spec.graph = named_graph(arg);
  return spec;
}

void warn_modulus(std::uint32_t q, std::ostream& err) {
  if (!is_prime_power(q)) {
    err << "warning: q = " << q << " is not a prime power; the constructions are defined "
        << "but the decision guarantees are stated for prime powers\n";
  }
}

std::vector<std::uint32_t> twist_table(const GraphSpec& spec, std::uint32_t q) {
  std::vector<std::uint32_t> t(spec.graph.edge_count(), 0);
  for (const auto& [edge, value] : spec.twists) {
    const auto qq = static_cast<std::int64_t>(q);
    t[spec.graph.edge_index(edge.first, edge.second)] =
        static_cast<std::uint32_t>(((value % qq) + qq) % qq);
  }
  return t;
}

void write_pair(const std::string& prefix, const Structure& a, const Structure& b,
                std::ostream& out) {
  write_structure_file(prefix + ".A.json", a);
  write_structure_file(prefix + ".B.json", b);
  out << prefix << ".A.json\n" << prefix << ".B.json\n";
}

struct GenConfig {
  std::string graph;
  std::uint32_t q = 2;
  std::optional<std::uint32_t> twist_total;
  std::optional<std::uint64_t> seed;
  bool odd = false;
  std::size_t k = 3;
  std::size_t vars = 8;
  std::optional<std::size_t> eqs;
  std::optional<double> density;
  std::size_t width = 3;
  bool planted = false;
  bool units = false;
  std::string kind = "gnp";
  std::size_t n = 6;
  double p = 0.5;
  std::size_t d = 3;
  std::string out;
};

int gen_cfi(const GenConfig& c, std::ostream& out, std::ostream& err) {
  if (c.graph.empty()) throw InputError("gen cfi needs --graph");
  warn_modulus(c.q, err);
  const GraphSpec g = load_graph(c.graph);
  CfiSpec base{g.graph, c.q, std::vector<std::uint32_t>(g.graph.edge_count(), 0)};
  CfiSpec twisted = base;
  if (c.twist_total) {
    if (g.graph.edge_count() == 0) throw InputError("graph has no edges to twist");
    if (c.seed) {
      Rng rng(*c.seed);
      twisted.twist = random_twist_with_total(rng, g.graph, c.q, *c.twist_total);
    } else {
      twisted.twist[0] = *c.twist_total % c.q;
    }
  } else {
    twisted.twist = twist_table(g, c.q);
  }
  base.validate();
  twisted.validate();
  write_pair(c.out.empty() ? "cfi" : c.out, cfi_structure(base), cfi_structure(twisted), out);
  return ExitCode::accept;
}

int gen_tseitin(const GenConfig& c, std::ostream& out, std::ostream& err) {
  if (c.graph.empty()) throw InputError("gen tseitin needs --graph");
  const GraphSpec g = load_graph(c.graph);
  std::vector<std::uint32_t> charge(g.graph.vertex_count(), 0);
  if (c.odd) {
    if (charge.empty()) throw InputError("empty graph cannot carry an odd charge");
    charge[0] = 1;
  }
  const AffineSystem sys = tseitin_system(g.graph, charge);
  std::size_t width = 0;
  for (const auto& e : sys.equations) width = std::max(width, e.vars.size());
  if (width > c.k) {
    err << "warning: equations have " << width << " variables, more than k = " << c.k << '\n';
  }
  auto [a, b] = affine_to_instance(sys);
  write_pair(c.out.empty() ? "tseitin" : c.out, a, b, out);
  return ExitCode::accept;
}

int gen_affine(const GenConfig& c, std::ostream& out, std::ostream& err) {
  if (!c.seed) throw InputError("gen affine needs --seed");
  warn_modulus(c.q, err);
  AffineParams p;
  p.q = c.q;
  p.variables = c.vars;
  p.max_width = std::min(c.width, std::max<std::size_t>(c.vars, 1));
  p.planted = c.planted;
  p.unit_coefficients = c.units;
  if (c.eqs) {
    p.equations = *c.eqs;
  } else {
    const double dens = c.density.value_or(1.0);
    if (dens < 0) throw InputError("density must be non-negative");
    p.equations = static_cast<std::size_t>(dens * static_cast<double>(c.vars) + 0.5);
  }
  Rng rng(*c.seed);
  auto [a, b] = affine_to_instance(random_affine(rng, p));
  write_pair(c.out.empty() ? "affine" : c.out, a, b, out);
  return ExitCode::accept;
}

int gen_graph(const GenConfig& c, std::ostream& out, std::ostream& err) {
  if (!c.seed) throw InputError("gen graph needs --seed");
  Rng rng(*c.seed);
  OrderedGraph g;
  if (c.kind == "gnp") {
    g = random_gnp(rng, c.n, c.p);
  } else if (c.kind == "regular") {
    g = random_regular(rng, c.n, c.d);
  } else {
    throw InputError("unknown graph kind '" + c.kind + "' (expected gnp or regular)");
  }
  std::string text;
  if (c.twist_total) {
    warn_modulus(c.q, err);
    auto t = random_twist_with_total(rng, g, c.q, *c.twist_total);
    text = to_graph_text(g, &t);
  } else {
    text = to_graph_text(g);
  }
  if (c.out.empty()) {
    out << text;
  } else {
    write_text(c.out, text);
    out << c.out << '\n';
  }
  return ExitCode::accept;
}

// ---- bench ----

struct BenchRow {
  std::string name;
  Problem problem = Problem::csp;
  std::string a;
  std::string b;
  std::size_t k = 3;
  Method method = Method::cohomological;
};

struct BenchResult {
  std::string verdict;
  std::size_t iterations = 0;
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::size_t sections = 0;
  double ms = 0;
  std::string oracle = "off";
  std::string agree = "-";
  std::string error;
};

std::vector<BenchRow> read_manifest(const std::string& path, std::size_t default_k,
                                    const std::optional<std::string>& method_override) {
  std::ifstream f(path);
  if (!f) throw InputError("cannot open manifest " + path);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(f);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError("manifest " + path + ": " + e.what());
  }
  const fs::path dir = fs::path(path).parent_path();
  const nlohmann::json* list = &j;
  std::vector<std::string> methods{"cohomological"};
  if (j.is_object()) {
    default_k = j.value("k", default_k);
    if (j.contains("methods")) methods = j["methods"].get<std::vector<std::string>>();
    if (!j.contains("instances")) throw InputError("manifest lacks an instances list");
    list = &j["instances"];
  }
  if (!list->is_array()) throw InputError("manifest instances must be an array");
  std::vector<BenchRow> rows;
  std::size_t idx = 0;
  for (const auto& inst : *list) {
    const std::string where = "manifest entry " + std::to_string(idx);
    if (!inst.is_object() || !inst.contains("a") || !inst.contains("b")) {
      throw InputError(where + " needs fields a and b");
    }
    BenchRow row;
    row.name = inst.value("name", "row" + std::to_string(idx));
    const std::string prob = inst.value("problem", "csp");
    if (prob == "csp") {
      row.problem = Problem::csp;
    } else if (prob == "iso") {
      row.problem = Problem::iso;
    } else {
      throw InputError(where + ": problem must be csp or iso");
    }
    auto resolve = [&](const std::string& p) {
      return fs::path(p).is_absolute() ? p : (dir / p).string();
    };
    row.a = resolve(inst["a"].get<std::string>());
    row.b = resolve(inst["b"].get<std::string>());
    row.k = inst.value("k", default_k);
    std::vector<std::string> ms = method_override
                                      ? std::vector<std::string>{*method_override}
                                      : inst.value("methods", methods);
    for (const auto& m : ms) {
      row.method = parse_method(m);
      rows.push_back(row);
    }
    ++idx;
  }
  return rows;
}

BenchResult run_row(const BenchRow& row, std::uint64_t budget) {
  BenchResult res;
  try {
    const Structure a = read_structure_file(row.a);
    const Structure b = read_structure_file(row.b);
    CohomOptions opts;
    opts.threads = 1;
    const DecisionReport r = decide(row.problem, row.method, a, b, row.k, false, opts);
    res.verdict = r.accept ? "accept" : "reject";
    res.iterations = r.iterations;
    res.rows = r.max_rows;
    res.cols = r.max_cols;
    for (auto s : r.sections) res.sections += s;
    res.ms = r.ms;
    if (budget > 0) {
      const SearchResult o = row.problem == Problem::csp ? brute_force_hom(a, b, budget)
                                                         : brute_force_iso(a, b, budget);
      if (o.status == SearchStatus::budget_exceeded) {
        res.oracle = "unknown";
      } else {
        const bool yes = o.status == SearchStatus::found;
        res.oracle = row.problem == Problem::csp ? (yes ? "sat" : "unsat")
                                                 : (yes ? "iso" : "noniso");
        res.agree = yes == r.accept ? "yes" : "no";
      }
    }
  } catch (const std::exception& e) {
    res.verdict = "error";
    res.error = e.what();
  }
  return res;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) {
    if (ch == '"') q += '"';
    q += ch == '\n' ? ' ' : ch;
  }
  return q + "\"";
}

int cmd_bench(const std::string& manifest, std::size_t k,
              const std::optional<std::string>& method, std::uint64_t budget, unsigned jobs,
              const std::string& out_path, std::ostream& out) {
  const auto rows = read_manifest(manifest, k, method);
  std::vector<BenchResult> results(rows.size());
  const unsigned workers = std::max(
      1U, std::min<unsigned>(jobs == 0 ? std::thread::hardware_concurrency() : jobs,
                             static_cast<unsigned>(std::max<std::size_t>(rows.size(), 1))));
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < rows.size(); i = next++) results[i] = run_row(rows[i], budget);
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < workers; ++t) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();

  std::ostringstream csv;
  csv << "name,problem,method,k,verdict,iterations,max_rows,max_cols,sections,ms,oracle,agree,"
         "error\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    const auto& s = results[i];
    csv << csv_field(r.name) << ',' << (r.problem == Problem::csp ? "csp" : "iso") << ','
        << (r.method == Method::classical ? "classical" : "cohomological") << ',' << r.k << ','
        << s.verdict << ',' << s.iterations << ',' << s.rows << ',' << s.cols << ','
        << s.sections << ',' << std::fixed << std::setprecision(3) << s.ms << ',' << s.oracle
        << ',' << s.agree << ',' << csv_field(s.error) << '\n';
  }
  if (out_path.empty()) {
    out << csv.str();
  } else {
    write_text(out_path, csv.str());
  }
  return ExitCode::accept;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Classical and cohomological k-consistency for finite structures", "sheafcsp"};
  app.require_subcommand(1);

  DecideConfig dc;
  DecideConfig ic;
  auto add_decide = [](CLI::App* sub, DecideConfig& c) {
    sub->add_option("a", c.a_path, "Structure A (JSON)")->required();
    sub->add_option("b", c.b_path, "Structure B (JSON)")->required();
    sub->add_option("--k", c.k, "Context size bound")->check(CLI::PositiveNumber);
    sub->add_option("--method", c.method, "classical or cohomological")
        ->check(CLI::IsMember({"classical", "cohomological"}));
    sub->add_flag("--compare", c.compare, "Also run the other method and report both");
    sub->add_option("--jobs", c.jobs, "Worker threads (0: all cores)");
    sub->add_option("--out", c.out, "Also write the report here");
  };
  auto* csp = app.add_subcommand("decide-csp", "Decide A -> B");
  add_decide(csp, dc);
  auto* iso = app.add_subcommand("decide-iso", "Decide A == B");
  add_decide(iso, ic);

  auto* gen = app.add_subcommand("gen", "Generate instances");
  gen->require_subcommand(1);
  GenConfig gc;
  std::uint32_t twist_total = 0;
  std::uint64_t seed = 0;
  std::size_t eqs = 0;
  double density = 0;
  auto* gcfi = gen->add_subcommand("cfi", "CFI pair: twist 0 and a twisted copy");
  auto* gts = gen->add_subcommand("tseitin", "Tseitin system as a CSP pair");
  auto* gaff = gen->add_subcommand("affine", "Random affine system over Z_q");
  auto* ggr = gen->add_subcommand("graph", "Random ordered graph");
  for (auto* s : {gcfi, gts, gaff, ggr}) {
    s->add_option("--out", gc.out, "Output path or prefix");
    s->add_option("--seed", seed, "RNG seed");
  }
  for (auto* s : {gcfi, gaff, ggr}) {
    s->add_option("--q", gc.q, "Modulus")->check(CLI::Range(2U, 1U << 16));
  }
  for (auto* s : {gcfi, gts}) s->add_option("--graph", gc.graph, "Graph file or name")->required();
  for (auto* s : {gcfi, ggr}) s->add_option("--twist-total", twist_total, "Twist sum mod q");
  gts->add_flag("--odd", gc.odd, "Odd total charge (unsatisfiable)");
  gts->add_option("--k", gc.k, "Warn when equations are wider than this");
  gaff->add_option("--vars", gc.vars, "Number of variables");
  gaff->add_option("--eqs", eqs, "Number of equations");
  gaff->add_option("--density", density, "Equations per variable (when --eqs is absent)");
  gaff->add_option("--width", gc.width, "Maximum variables per equation")
      ->check(CLI::PositiveNumber);
  gaff->add_flag("--planted", gc.planted, "Constants chosen to admit a hidden solution");
  gaff->add_flag("--units", gc.units, "Coefficients restricted to units mod q");
  ggr->add_option("--kind", gc.kind, "gnp or regular");
  ggr->add_option("--n", gc.n, "Vertices");
  ggr->add_option("--p", gc.p, "Edge probability (gnp)")->check(CLI::Range(0.0, 1.0));
  ggr->add_option("--d", gc.d, "Degree (regular)");

  auto* bench = app.add_subcommand("bench", "Run a manifest of instances, print CSV");
  std::string manifest;
  std::size_t bench_k = 3;
  std::string bench_method;
  std::uint64_t budget = 0;
  unsigned bench_jobs = 0;
  std::string bench_out;
  bench->add_option("manifest", manifest, "JSON manifest")->required();
  bench->add_option("--k", bench_k, "Default k")->check(CLI::PositiveNumber);
  bench->add_option("--method", bench_method, "Override the manifest methods")
      ->check(CLI::IsMember({"classical", "cohomological"}));
  bench->add_option("--budget", budget, "Oracle search node budget (0: no oracle)");
  bench->add_option("--jobs", bench_jobs, "Rows run concurrently (0: all cores)");
  bench->add_option("--out", bench_out, "CSV path (default stdout)");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return ExitCode::accept;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return ExitCode::error;
  }

  try {
    if (csp->parsed()) return cmd_decide(Problem::csp, dc, out);
    if (iso->parsed()) return cmd_decide(Problem::iso, ic, out);
    if (gen->parsed()) {
      for (auto* s : {gcfi, gts, gaff, ggr}) {
        if (s->parsed()) {
          if (s->count("--seed")) gc.seed = seed;
        }
      }
      if (gcfi->count("--twist-total") || ggr->count("--twist-total")) gc.twist_total = twist_total;
      if (gaff->count("--eqs")) gc.eqs = eqs;
      if (gaff->count("--density")) gc.density = density;
      if (gcfi->parsed()) return gen_cfi(gc, out, err);
      if (gts->parsed()) return gen_tseitin(gc, out, err);
      if (gaff->parsed()) return gen_affine(gc, out, err);
      return gen_graph(gc, out, err);
    }
    return cmd_bench(manifest, bench_k,
                     bench_method.empty() ? std::nullopt : std::optional(bench_method), budget,
                     bench_jobs, bench_out, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return ExitCode::error;
  }
}

}  // namespace sheafcsp::cli
