#include "cli.hpp"

#include <dfree/bounds.hpp>
#include <dfree/constructions.hpp>
#include <dfree/io.hpp>
#include <dfree/lattice.hpp>
#include <dfree/mnm.hpp>
#include <dfree/montecarlo.hpp>
#include <dfree/posets.hpp>
#include <dfree/scenario.hpp>
#include <dfree/search.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#ifndef DFREE_VERSION
#define DFREE_VERSION "0.0.0"
#endif

namespace dfree::cli {
namespace {

using nlohmann::json;

enum class Format { text, json, csv };

struct Global {
  std::uint64_t seed = 0;
  unsigned threads = std::max(1U, std::thread::hardware_concurrency());
  std::string format;
  std::string output;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Format format_of(const Global& g, Format fallback) {
  if (g.format.empty()) return fallback;
  if (g.format == "text") return Format::text;
  if (g.format == "json") return Format::json;
  if (g.format == "csv") return Format::csv;
  throw UsageError("unknown format '" + g.format + "' (expected json, csv or text)");
}

void require_not_csv(Format f, const std::string& cmd) {
  if (f == Format::csv) throw UsageError(cmd + " has no csv output; use text or json");
}

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::filesystem::path resolve_output(const std::string& path) {
  std::filesystem::path p(path);
  if (p.is_relative()) {
    if (const char* dir = std::getenv(kOutputDirEnv); dir && *dir) p = std::filesystem::path(dir) / p;
  }
  return p;
}

void emit(const Global& g, std::ostream& out, const std::string& payload) {
  if (g.output.empty()) {
    out << payload;
    return;
  }
  const auto p = resolve_output(g.output);
  std::ofstream file(p, std::ios::binary);
  if (!file) throw UsageError("cannot write '" + p.string() + "'");
  file << payload;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json location_json(const std::vector<std::pair<std::string, double>>& where) {
  json j = json::object();
  for (const auto& [k, v] : where) j[k] = v;
  return j;
}

std::string clause_line(const Clause& c) {
  std::string s = std::string(c.pass ? "PASS " : "FAIL ") + c.name + ": " + to_string(c.lhs) + " " +
                  to_string(c.relation) + " " + to_string(c.rhs);
  if (!c.note.empty()) s += "  (" + c.note + ")";
  return s + "\n";
}

std::string summary_line(bool pass, const std::string& what) {
  return std::string(pass ? "PASS " : "FAIL ") + what + "\n";
}

// ---------------------------------------------------------------------------
// Families from files or constructions

struct ConstructArgs {
  std::string kind;
  int n = 0;
  int k = -1;
  double a = -1;
  std::string A, X, C;
};

Subset parse_set_arg(const std::string& text, int n) {
  return io::parse_subset(text.empty() ? "{}" : text, n);
}

Family build_family(const ConstructArgs& c) {
  if (c.n < 0 || c.n > kMaxGround) throw CapacityError("construct: n outside 0.." + std::to_string(kMaxGround));
  if (c.kind == "even-odd") return even_odd_family(c.n);
  if (c.kind == "two-middle-levels") return two_middle_levels(c.n);
  if (c.kind == "canonical") {
    Subset A;
    if (!c.A.empty()) {
      A = parse_set_arg(c.A, c.n);
    } else {
      int k = c.k;
      if (k < 0 && c.a >= 0) k = make_canonical_fraction(c.n, c.a).k;
      if (k < 0 || k > c.n) throw UsageError("construct canonical: give --A, --k in 0..n or --a in [0, 1]");
      for (int e = 1; e <= k; ++e) A = A.with(e);
    }
    return canonical_family({c.n, A});
  }
  if (c.kind == "product") return product_antichain(c.n, parse_set_arg(c.X, c.n), parse_set_arg(c.C, c.n));
  if (c.kind == "level") {
    if (c.k < 0 || c.k > c.n) throw UsageError("construct level: --k must lie in 0..n");
    return Family::level(c.n, c.k);
  }
  throw UsageError("unknown construction '" + c.kind +
                   "' (expected even-odd, canonical, two-middle-levels, product or level)");
}

void add_construct_options(CLI::App* cmd, ConstructArgs& c, bool required) {
  auto* kind = cmd->add_option("--construct,--kind", c.kind,
                               "even-odd | canonical | two-middle-levels | product | level");
  if (required) kind->required();
  cmd->add_option("--n", c.n, "ground set size");
  cmd->add_option("--k", c.k, "|A| for canonical, level index for level");
  cmd->add_option("--a", c.a, "|A|/n for canonical (rounded)");
  cmd->add_option("--A", c.A, "singleton set for canonical, e.g. 1,2");
  cmd->add_option("--X", c.X, "first factor for product");
  cmd->add_option("--C", c.C, "second factor for product");
}

Family load_family(const std::string& path, std::optional<int> n) {
  const std::string text = read_input(path);
  const auto t = io::trim(text);
  if (!t.empty() && t.front() == '[') {
    if (!n) throw UsageError("a bare JSON array needs --n");
    return io::from_json(json::parse(text), n);
  }
  return io::parse_any(text);
}

// ---------------------------------------------------------------------------
// Commands

struct LubellArgs {
  std::string file;
  ConstructArgs construct;
};

int cmd_lubell(const Global& g, const LubellArgs& a, std::ostream& out) {
  if (a.file.empty() == a.construct.kind.empty()) throw UsageError("lubell: give a family file or --construct");
  const Family fam = a.file.empty() ? build_family(a.construct)
                                    : load_family(a.file, a.construct.n > 0 ? std::optional<int>(a.construct.n)
                                                                            : std::nullopt);
  const Rational l = lubell(fam);
  switch (format_of(g, Format::text)) {
    case Format::text: emit(g, out, to_string(l) + "\n"); break;
    case Format::csv: emit(g, out, "n,size,lubell\n" + std::to_string(fam.n()) + "," + std::to_string(fam.size()) +
                                       "," + to_decimal(to_double(l)) + "\n"); break;
    case Format::json:
      emit(g, out, dump({{"n", fam.n()},
                         {"size", fam.size()},
                         {"lubell", to_string(l)},
                         {"lubell_decimal", to_double(l)},
                         {"diamond_free", is_diamond_free(fam)},
                         {"lambda_free", is_lambda_free(fam)}}));
      break;
  }
  return kOk;
}

int cmd_construct(const Global& g, const ConstructArgs& c, std::ostream& out) {
  const Family fam = build_family(c);
  const Format f = format_of(g, Format::text);
  require_not_csv(f, "construct");
  emit(g, out, f == Format::json ? dump(io::to_json(fam)) : io::to_text(fam));
  return kOk;
}

struct MnmArgs {
  std::string file;
  int n = 0;
  bool profile = false;
};

int cmd_mnm(const Global& g, const MnmArgs& a, std::ostream& out) {
  const Family fam = load_family(a.file, a.n > 0 ? std::optional<int>(a.n) : std::nullopt);
  const std::uint64_t chains = count_mnm_chains(fam, g.threads);
  const Rational c(BigInt(chains), BigInt(factorial(fam.n())));
  const Format f = format_of(g, Format::text);
  require_not_csv(f, "mnm");
  bool pass = true;
  json j{{"n", fam.n()}, {"mnm", to_string(c)}, {"mnm_chains", chains}, {"chains", factorial(fam.n())}};
  std::string text = to_string(c) + "\n";
  if (a.profile) {
    const auto p = minset_profile(fam);
    pass = p.checks.all_pass();
    json mins = json::array();
    for (const auto& e : p.minimal)
      mins.push_back({{"set", to_string(e.set)}, {"c", to_string(e.c)}, {"chains_through", e.chains_through.str()}});
    j["profile"] = {{"minimal", mins},
                    {"C", to_string(p.C)},
                    {"empty_or_mnm", to_string(p.empty_or_mnm)},
                    {"weighted_mnm", to_string(p.weighted_mnm)},
                    {"normalized", p.normalized},
                    {"checks", to_json(p.checks)}};
    j["pass"] = pass;
    text = summary_line(pass, "minset profile") + "mnm " + to_string(c) + "\nC " + to_string(p.C) + "\n";
    for (const auto& e : p.minimal) text += "c(" + to_string(e.set) + ") " + to_string(e.c) + "\n";
    for (const auto& cl : p.checks.clauses) text += clause_line(cl);
  }
  emit(g, out, f == Format::json ? dump(j) : text);
  return pass ? kOk : kVerificationFailed;
}

struct ScenarioArgs {
  std::string file;
  int random_n = 0;
  std::string case_request = "any";
};

CaseRequest parse_case(const std::string& s) {
  if (s == "any") return CaseRequest::any;
  if (s == "singletons") return CaseRequest::singletons;
  if (s == "no-singleton" || s == "no_singleton") return CaseRequest::no_singleton;
  if (s == "mixed") return CaseRequest::mixed;
  throw UsageError("unknown case '" + s + "' (expected any, singletons, no-singleton or mixed)");
}

Scenario load_scenario(const Global& g, const ScenarioArgs& a) {
  if (!a.file.empty() && a.random_n > 0) throw UsageError("give either a scenario file or --random, not both");
  if (a.random_n > 0) {
    std::mt19937_64 rng(g.seed);
    return random_scenario(rng, a.random_n, parse_case(a.case_request));
  }
  if (a.file.empty()) throw UsageError("give a scenario file or --random N");
  return parse_scenario(read_input(a.file));
}

void add_scenario_options(CLI::App* cmd, ScenarioArgs& a) {
  cmd->add_option("file", a.file, "scenario file");
  cmd->add_option("--random", a.random_n, "draw a random scenario on [N] from --seed instead");
  cmd->add_option("--case", a.case_request, "any | singletons | no-singleton | mixed (with --random)");
}

int cmd_verify_props(const Global& g, const ScenarioArgs& a, std::ostream& out) {
  const Scenario s = load_scenario(g, a);
  const Report r = verify_counting_props(s, g.threads);
  const auto st = scenario_stats(s, g.threads);
  const bool pass = r.all_pass();
  const Format f = format_of(g, Format::text);
  require_not_csv(f, "verify-props");
  if (f == Format::json) {
    emit(g, out, dump({{"pass", pass},
                       {"case", to_string(classify_case(s))},
                       {"scenario", to_text(s)},
                       {"stats", to_json(st)},
                       {"clauses", to_json(r)}}));
  } else {
    std::string text = summary_line(pass, "verify-props (" + std::to_string(r.clauses.size()) + " clauses, case " +
                                              to_string(classify_case(s)) + ")");
    for (const auto& c : r.clauses) text += clause_line(c);
    emit(g, out, text);
  }
  return pass ? kOk : kVerificationFailed;
}

int cmd_derive_children(const Global& g, const ScenarioArgs& a, std::ostream& out) {
  const Scenario s = load_scenario(g, a);
  const auto rep = derive_children(s, g.threads);
  const bool pass = rep.checks.all_pass();
  const Format f = format_of(g, Format::text);
  require_not_csv(f, "derive-children");
  if (f == Format::json) {
    json kids = json::array();
    for (const auto& c : rep.children)
      kids.push_back({{"o", c.o},
                      {"scenario", to_text(c.child)},
                      {"alpha", to_string(c.alpha)},
                      {"mu", to_string(c.mu)},
                      {"c", to_string(c.c)},
                      {"lubell", to_string(c.lubell_c)}});
    emit(g, out, dump({{"pass", pass},
                       {"case", to_string(rep.tag)},
                       {"xprime", to_string(rep.Xprime)},
                       {"xprime_family", io::members_to_json(rep.XPrimeFam)},
                       {"children", kids},
                       {"clauses", to_json(rep.checks)}}));
  } else {
    std::string text = summary_line(pass, "derive-children (" + std::to_string(rep.children.size()) +
                                              " children, case " + to_string(rep.tag) + ")");
    for (const auto& c : rep.checks.clauses) text += clause_line(c);
    for (const auto& c : rep.children) text += "# child o=" + std::to_string(c.o) + "\n" + to_text(c.child);
    emit(g, out, text);
  }
  return pass ? kOk : kVerificationFailed;
}

struct GridArgs {
  int x = 201, c = 201, a = 51, at = 51;
  double c_max = 0.5;
};

int cmd_verify_lemma(const Global& g, const GridArgs& a, std::ostream& out) {
  GridSpec spec;
  spec.x.steps = a.x;
  spec.c = {0.0, a.c_max, a.c};
  spec.a.steps = a.a;
  spec.atilde.steps = a.at;
  spec.threads = g.threads;
  const auto rep = verify_lemma_functions(spec);
  const bool pass = rep.all_pass();
  const Format f = format_of(g, Format::text);
  if (f == Format::json) {
    json props = json::array();
    for (const auto& p : rep.properties)
      props.push_back({{"name", p.name},
                       {"pass", p.pass()},
                       {"tolerance", p.tolerance},
                       {"worst_slack", p.worst_slack},
                       {"location", location_json(p.location)},
                       {"points", p.points}});
    emit(g, out, dump({{"pass", pass}, {"properties", props}}));
  } else if (f == Format::csv) {
    std::string text = "property,pass,tolerance,worst_slack,points\n";
    for (const auto& p : rep.properties)
      text += p.name + "," + (p.pass() ? "1" : "0") + "," + to_decimal(p.tolerance) + "," +
              to_decimal(p.worst_slack) + "," + std::to_string(p.points) + "\n";
    emit(g, out, text);
  } else {
    std::string text = summary_line(pass, "verify-lemma (" + std::to_string(rep.properties.size()) + " properties)");
    for (const auto& p : rep.properties) {
      text += std::string(p.pass() ? "PASS " : "FAIL ") + p.name + " worst_slack=" + to_decimal(p.worst_slack) +
              " points=" + std::to_string(p.points);
      for (const auto& [k, v] : p.location) text += " " + k + "=" + to_decimal(v);
      text += "\n";
    }
    emit(g, out, text);
  }
  return pass ? kOk : kVerificationFailed;
}

std::string sweep_text(const InequalitySweep& s) {
  std::string text = summary_line(s.pass(), s.name + " (" + std::to_string(s.admissible) + " admissible of " +
                                                std::to_string(s.examined) + ")");
  text += "failures " + std::to_string(s.failures) + "\n";
  text += "worst_slack " + to_decimal(s.worst_slack) + "\n";
  if (!s.worst_witness.empty())
    text += "worst_lhs " + to_string(s.worst_lhs) + "\nworst_rhs " + to_decimal(s.worst_rhs) + "\n# worst case\n" +
            s.worst_witness;
  return text;
}

json sweep_json(const InequalitySweep& s) {
  return {{"name", s.name},           {"pass", s.pass()},
          {"examined", s.examined},   {"admissible", s.admissible},
          {"failures", s.failures},   {"worst_slack", s.worst_slack},
          {"worst_lhs", to_string(s.worst_lhs)}, {"worst_rhs", s.worst_rhs},
          {"worst_witness", s.worst_witness}};
}

int emit_sweep(const Global& g, const InequalitySweep& s, std::ostream& out, const std::string& cmd) {
  const Format f = format_of(g, Format::text);
  require_not_csv(f, cmd);
  emit(g, out, f == Format::json ? dump(sweep_json(s)) : sweep_text(s));
  return s.pass() ? kOk : kVerificationFailed;
}

struct Lemma9Args {
  int n = 4, nprime = 2;
  std::uint64_t samples = 100000;
};

struct Lemma12Args {
  int n_lo = 3, n_hi = 7;
  std::uint64_t samples = 500;
  std::string case_request = "any";
};

struct SearchArgs {
  int n = 0;
  std::string pattern;
  std::string levels;
  std::string objective = "card";
  bool require_empty = false;
  bool deterministic = false;
  bool shuffle = false;
};

int cmd_search(const Global& g, const SearchArgs& a, std::ostream& out) {
  SearchProblem p;
  p.n = a.n;
  p.pattern = posets::parse(a.pattern);
  if (!a.levels.empty()) {
    const auto colon = a.levels.find(':');
    if (colon == std::string::npos) throw UsageError("--levels expects lo:hi");
    p.window = LevelWindow{io::parse_int(a.levels.substr(0, colon), "level"),
                           io::parse_int(a.levels.substr(colon + 1), "level")};
  }
  if (a.objective == "card") {
    p.objective = Objective::cardinality;
  } else if (a.objective == "lubell") {
    p.objective = Objective::lubell;
  } else {
    throw UsageError("unknown objective '" + a.objective + "' (expected card or lubell)");
  }
  SearchOptions opt;
  opt.threads = g.threads;
  opt.deterministic = a.deterministic;
  if (a.shuffle) opt.shuffle_seed = g.seed;
  SearchResult r;
  if (p.objective == Objective::lubell) {
    r = max_lubell(p, a.require_empty, opt);
  } else {
    if (a.require_empty) p.must_contain.push_back(Subset());
    r = la_exact(p, opt);
  }
  const Format f = format_of(g, Format::text);
  require_not_csv(f, "search");
  if (f == Format::json) {
    emit(g, out, dump({{"n", p.n},
                       {"pattern", p.pattern.name()},
                       {"objective", to_string(p.objective)},
                       {"optimum", to_string(r.optimum)},
                       {"witness", io::to_json(r.witness)},
                       {"nodes", r.nodes_explored}}));
  } else {
    emit(g, out, "optimum " + to_string(r.optimum) + "\nnodes " + std::to_string(r.nodes_explored) + "\n# witness\n" +
                     io::to_text(r.witness));
  }
  return kOk;
}

struct CurveArgs {
  bool max = false;
  std::string figure;
  int samples = 101;
  std::optional<double> x, c;
};

int cmd_bound_curve(const Global& g, const CurveArgs& a, std::ostream& out) {
  const int modes = (a.max ? 1 : 0) + (a.figure.empty() ? 0 : 1) + (a.x || a.c ? 1 : 0);
  if (modes != 1) throw UsageError("bound-curve: give exactly one of --max, --figure, or --x with --c");
  if (a.max) {
    const auto m = maximize_final_curve();
    const Format f = format_of(g, Format::text);
    require_not_csv(f, "bound-curve --max");
    if (f == Format::json) {
      emit(g, out, dump({{"cstar", to_decimal(m.cstar, 20)},
                         {"value", to_decimal(m.value, 20)},
                         {"cstar_analytic", to_decimal(m.cstar_analytic, 20)},
                         {"value_analytic", to_decimal(m.value_analytic, 20)},
                         {"iterations", m.iterations}}));
    } else {
      emit(g, out, "Cstar " + to_decimal(m.cstar, 16) + "\nvalue " + to_decimal(m.value, 16) + "\nCstar_analytic " +
                       to_decimal(m.cstar_analytic, 16) + "\nvalue_analytic " + to_decimal(m.value_analytic, 16) +
                       "\n");
    }
    return kOk;
  }
  if (!a.figure.empty()) {
    const auto rows = figure_data(parse_figure(a.figure), a.samples);
    const Format f = format_of(g, Format::csv);
    if (f == Format::json) {
      json arr = json::array();
      for (const auto& r : rows) arr.push_back({{"series", r.series}, {"abscissa", r.abscissa}, {"value", r.value}});
      emit(g, out, dump(arr));
    } else {
      emit(g, out, to_csv(rows));
    }
    return kOk;
  }
  if (!a.x || !a.c) throw UsageError("bound-curve: --x and --c go together");
  const double v = f(*a.x, *a.c);
  const Format fmt = format_of(g, Format::text);
  require_not_csv(fmt, "bound-curve --x --c");
  if (fmt == Format::json) {
    emit(g, out, dump({{"x", *a.x}, {"c", *a.c}, {"f", v}, {"branch", to_string(branch(*a.x, *a.c))}}));
  } else {
    emit(g, out, to_decimal(v) + " " + to_string(branch(*a.x, *a.c)) + "\n");
  }
  return kOk;
}

int cmd_tail_mass(const Global& g, int n, std::ostream& out) {
  const Rational t = tail_mass(n);
  switch (format_of(g, Format::text)) {
    case Format::text: emit(g, out, to_string(t) + "\n" + to_decimal(to_double(t)) + "\n"); break;
    case Format::csv: emit(g, out, "n,tail_mass\n" + std::to_string(n) + "," + to_decimal(to_double(t)) + "\n"); break;
    case Format::json:
      emit(g, out, dump({{"n", n}, {"tail_mass", to_string(t)}, {"decimal", to_double(t)}}));
      break;
  }
  return kOk;
}

struct McArgs {
  std::string generator;
  int n = 0;
  int k = -1;
  double a = -1;
  std::uint64_t samples = 1000000;
};

int cmd_mc(const Global& g, const McArgs& a, std::ostream& out) {
  Generator gen;
  switch (parse_generator(a.generator)) {
    case GeneratorKind::even_odd: gen = make_even_odd(a.n); break;
    case GeneratorKind::two_middle_levels: gen = make_two_middle_levels(a.n); break;
    case GeneratorKind::canonical:
      if (a.k >= 0) {
        gen = make_canonical(a.n, a.k);
      } else if (a.a >= 0) {
        gen = make_canonical_fraction(a.n, a.a);
      } else {
        throw UsageError("mc canonical: give --k or --a");
      }
      break;
  }
  const auto e = mc_estimate(gen, a.samples, g.seed);
  const auto exact = exact_values(gen);
  const auto z = [&](double est, double se, const Rational& ex) {
    return e.stderr_defined && se > 0 ? (est - to_double(ex)) / se : 0.0;
  };
  const std::string stderr_lubell = e.stderr_defined ? to_decimal(e.lubell_stderr) : "undefined";
  const std::string stderr_mnm = e.stderr_defined ? to_decimal(e.mnm_stderr) : "undefined";
  switch (format_of(g, Format::text)) {
    case Format::text:
      emit(g, out, "generator " + std::string(to_string(gen.kind)) + " n=" + std::to_string(gen.n) +
                       " k=" + std::to_string(gen.k) + "\nsamples " + std::to_string(e.samples) + "\nlubell " +
                       to_decimal(e.lubell) + " stderr " + stderr_lubell + " exact " + to_string(exact.lubell) +
                       "\nmnm " + to_decimal(e.mnm) + " stderr " + stderr_mnm + " exact " + to_string(exact.mnm) +
                       "\n");
      break;
    case Format::csv:
      emit(g, out, "quantity,estimate,stderr,exact\nlubell," + to_decimal(e.lubell) + "," + stderr_lubell + "," +
                       to_decimal(to_double(exact.lubell)) + "\nmnm," + to_decimal(e.mnm) + "," + stderr_mnm + "," +
                       to_decimal(to_double(exact.mnm)) + "\n");
      break;
    case Format::json: {
      json j{{"generator", to_string(gen.kind)},
             {"n", gen.n},
             {"k", gen.k},
             {"samples", e.samples},
             {"seed", g.seed},
             {"lubell", e.lubell},
             {"mnm", e.mnm},
             {"stderr_defined", e.stderr_defined},
             {"lubell_exact", to_string(exact.lubell)},
             {"mnm_exact", to_string(exact.mnm)}};
      if (e.stderr_defined) {
        j["lubell_stderr"] = e.lubell_stderr;
        j["mnm_stderr"] = e.mnm_stderr;
        j["lubell_z"] = z(e.lubell, e.lubell_stderr, exact.lubell);
        j["mnm_z"] = z(e.mnm, e.mnm_stderr, exact.mnm);
      }
      emit(g, out, dump(j));
      break;
    }
  }
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact computations for diamond-free and forbidden-subposet families", "dfree"};
  app.set_version_flag("--version", std::string(DFREE_VERSION));
  app.require_subcommand(1);
  app.fallthrough();

  Global g;
  app.add_option("--seed", g.seed, "random seed")->capture_default_str();
  app.add_option("--threads", g.threads, "worker threads")->capture_default_str();
  app.add_option("--format", g.format, "json | csv | text");
  app.add_option("--output", g.output, std::string("write data here; relative paths resolve against $") + kOutputDirEnv);

  LubellArgs lub;
  auto* c_lubell = app.add_subcommand("lubell", "Lubell value of a family file or construction");
  c_lubell->add_option("file", lub.file, "family file (text or JSON)");
  add_construct_options(c_lubell, lub.construct, false);

  ConstructArgs con;
  auto* c_construct = app.add_subcommand("construct", "emit a named construction as a family file");
  add_construct_options(c_construct, con, true);

  MnmArgs mnm;
  auto* c_mnm = app.add_subcommand("mnm", "fraction of MNM chains of a family");
  c_mnm->add_option("file", mnm.file, "family file")->required();
  c_mnm->add_option("--n", mnm.n, "ground size for a bare JSON array");
  c_mnm->add_flag("--profile", mnm.profile, "per-minimal-member MNM fractions and chain accounting");

  ScenarioArgs props;
  auto* c_props = app.add_subcommand("verify-props", "exact chain-count identities for a scenario");
  add_scenario_options(c_props, props);

  ScenarioArgs kids;
  auto* c_kids = app.add_subcommand("derive-children", "child scenarios and their sum identities");
  add_scenario_options(c_kids, kids);

  GridArgs grid;
  auto* c_lemma = app.add_subcommand("verify-lemma", "grid verification of the bound functions f, g, h");
  c_lemma->add_option("--x-steps", grid.x)->capture_default_str();
  c_lemma->add_option("--c-steps", grid.c)->capture_default_str();
  c_lemma->add_option("--c-max", grid.c_max)->capture_default_str();
  c_lemma->add_option("--a-steps", grid.a)->capture_default_str();
  c_lemma->add_option("--atilde-steps", grid.at)->capture_default_str();

  Lemma9Args l9;
  auto* c_l9 = app.add_subcommand("verify-lemma9", "Lubell bound in terms of MNM chains over all small families");
  c_l9->add_option("--n", l9.n)->capture_default_str();
  c_l9->add_option("--nprime", l9.nprime)->capture_default_str();
  c_l9->add_option("--samples", l9.samples, "random families for n = 5")->capture_default_str();

  Lemma12Args l12;
  auto* c_l12 = app.add_subcommand("verify-lemma12", "induction bound on random scenarios");
  c_l12->add_option("--n-lo", l12.n_lo)->capture_default_str();
  c_l12->add_option("--n-hi", l12.n_hi)->capture_default_str();
  c_l12->add_option("--samples", l12.samples)->capture_default_str();
  c_l12->add_option("--case", l12.case_request)->capture_default_str();

  SearchArgs sa;
  auto* c_search = app.add_subcommand("search", "exact extremal P-free families");
  c_search->add_option("--n", sa.n)->required();
  c_search->add_option("--pattern", sa.pattern, "chain:k | v | lambda | diamond | fork:r")->required();
  c_search->add_option("--levels", sa.levels, "level window lo:hi");
  c_search->add_option("--objective", sa.objective, "card | lubell")->capture_default_str();
  c_search->add_flag("--require-empty-set", sa.require_empty);
  c_search->add_flag("--deterministic", sa.deterministic, "single-threaded, reproducible witness");
  c_search->add_flag("--shuffle", sa.shuffle, "explore sets in an order drawn from --seed");

  CurveArgs curve;
  auto* c_curve = app.add_subcommand("bound-curve", "bound function values, figure data and the final maximum");
  c_curve->add_flag("--max", curve.max, "maximize the final curve");
  c_curve->add_option("--figure", curve.figure, "f-vs-x | f-vs-c | final-curve");
  c_curve->add_option("--samples", curve.samples, "points per series")->capture_default_str();
  c_curve->add_option("--x", curve.x);
  c_curve->add_option("--c", curve.c);

  int tail_n = 0;
  auto* c_tail = app.add_subcommand("tail-mass", "binomial mass far from the middle, relative to the middle level");
  c_tail->add_option("--n", tail_n)->required();

  McArgs mc;
  auto* c_mc = app.add_subcommand("mc", "Monte Carlo estimates over random maximal chains");
  c_mc->add_option("--generator", mc.generator, "even-odd | canonical | two-middle-levels")->required();
  c_mc->add_option("--n", mc.n)->required();
  c_mc->add_option("--k", mc.k, "|A| for canonical");
  c_mc->add_option("--a", mc.a, "|A|/n for canonical");
  c_mc->add_option("--samples", mc.samples)->capture_default_str();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (c_lubell->parsed()) return cmd_lubell(g, lub, out);
    if (c_construct->parsed()) return cmd_construct(g, con, out);
    if (c_mnm->parsed()) return cmd_mnm(g, mnm, out);
    if (c_props->parsed()) return cmd_verify_props(g, props, out);
    if (c_kids->parsed()) return cmd_derive_children(g, kids, out);
    if (c_lemma->parsed()) return cmd_verify_lemma(g, grid, out);
    if (c_l9->parsed()) return emit_sweep(g, verify_lemma9_exhaustive(l9.n, l9.nprime, l9.samples, g.seed), out,
                                          "verify-lemma9");
    if (c_l12->parsed())
      return emit_sweep(g, verify_lemma12_random(l12.n_lo, l12.n_hi, l12.samples, g.seed, parse_case(l12.case_request)),
                        out, "verify-lemma12");
    if (c_search->parsed()) return cmd_search(g, sa, out);
    if (c_curve->parsed()) return cmd_bound_curve(g, curve, out);
    if (c_tail->parsed()) return cmd_tail_mass(g, tail_n, out);
    if (c_mc->parsed()) return cmd_mc(g, mc, out);
  } catch (const CapacityError& e) {
    err << "capacity error: " << e.what() << "\n";
    return kCapacity;
  } catch (const std::logic_error& e) {
    // DomainError and ValidationError derive from logic_error.
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::runtime_error& e) {
    // ParseError, UsageError, JSON parse failures.
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const nlohmann::json::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  err << "error: no subcommand\n";
  return kUsage;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, out, err);
}

}  // namespace dfree::cli
