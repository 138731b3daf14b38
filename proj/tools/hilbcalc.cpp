// hilbcalc: command line front end to the cohomology engine.
//
// Exit codes: 0 success, 1 a check or validation failed, 2 bad usage or input.

#include "hilbcalc/builtin_models.hpp"
#include "hilbcalc/cache.hpp"
#include "hilbcalc/hilbert_ring.hpp"
#include "hilbcalc/serialize.hpp"
#include "hilbcalc/suites.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

using namespace hilbcalc;
using nlohmann::json;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Common {
  std::string model = "builtin:P2";
  bool no_cache = false;
  std::string cache_dir;
  int jobs = 1;
  std::string format = "json";
  std::string out;
};

// The model document as JSON: "builtin:NAME" or a file path.
json model_document(const std::string& where) {
  if (where.rfind("builtin:", 0) == 0) {
    const auto name = where.substr(8);
    try {
      return json::parse(builtin_model_source(name));
    } catch (const std::out_of_range&) {
      throw UsageError("unknown builtin model '" + name + "'");
    }
  }
  std::ifstream in(where);
  if (!in) throw UsageError("cannot open model file " + where);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw UsageError("model file " + where + " is not JSON: " + e.what());
  }
}

SurfaceModel load_model(const std::string& where) {
  try {
    return SurfaceModel::load(model_document(where));
  } catch (const SchemaError& e) {
    throw UsageError(std::string("schema error: ") + e.what());
  }
}

// Inline JSON or the path of a JSON file.
json read_json_arg(const std::string& arg) {
  const auto first = arg.find_first_not_of(" \t\n");
  if (first != std::string::npos && (arg[first] == '[' || arg[first] == '{' || arg[first] == '"')) {
    try {
      return json::parse(arg);
    } catch (const json::parse_error&) {
    }
  }
  std::ifstream in(arg);
  if (!in) throw UsageError("cannot read " + arg);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw UsageError(arg + " is not JSON: " + e.what());
  }
}

std::unique_ptr<Store> open_store(const Common& c) {
  if (c.no_cache) return nullptr;
  return std::make_unique<FileStore>(c.cache_dir.empty() ? default_cache_dir() : std::filesystem::path(c.cache_dir));
}

// Writes to --out if given, else stdout.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw UsageError("cannot write " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

 private:
  std::ofstream file_;
};

FockVector read_vector(const SurfaceModel& m, const json& j) {
  try {
    return fock_from_json(m, j);
  } catch (const std::exception& e) {
    throw UsageError(std::string("bad class: ") + e.what());
  }
}

void check_weight(const FockVector& v, int n, const char* what) {
  if (!v.is_zero() && !v.has_weight(n))
    throw UsageError(std::string(what) + " does not live on X^[" + std::to_string(n) + "]");
}

void print_vector(const SurfaceModel& m, const FockVector& v, const Common& c) {
  Output out(c.out);
  if (c.format == "pretty")
    out.stream() << fock_to_text(m, v) << '\n';
  else
    out.stream() << fock_to_json(m, v).dump() << '\n';
}

void print_suite(const SuiteResult& r, const Common& c) {
  Output out(c.out);
  if (c.format == "pretty") {
    out.stream() << r.suite << ": " << (r.passed() ? "ok" : "FAILED") << " (" << r.checks << " checks, "
                 << r.failure_count << " failures, " << r.seconds << " s)\n";
    for (const auto& f : r.failures) out.stream() << "  " << f << '\n';
    for (const auto& n : r.notes) out.stream() << "  note: " << n << '\n';
  } else {
    out.stream() << r.to_json().dump() << '\n';
  }
}

int cmd_surface_check(const Common& c) {
  SurfaceModel m = [&] {
    try {
      return SurfaceModel::from_json(model_document(c.model));
    } catch (const SchemaError& e) {
      throw UsageError(std::string("schema error: ") + e.what());
    }
  }();
  const auto r = surface_identities(m);
  print_suite(r, c);
  return r.passed() ? 0 : 1;
}

int cmd_cup(const Common& c, std::optional<int> n_opt, const std::string& a_arg, const std::string& b_arg) {
  const auto m = load_model(c.model);
  FockVector a, b;
  int n = 0;
  if (b_arg.empty()) {
    // a single request {"n", "A", "B"}
    const auto req = read_json_arg(a_arg);
    if (!req.is_object() || !req.contains("A") || !req.contains("B")) throw UsageError("cup request needs A and B");
    n = n_opt ? *n_opt : req.value("n", -1);
    a = read_vector(m, req.at("A"));
    b = read_vector(m, req.at("B"));
  } else {
    if (!n_opt) throw UsageError("--n is required");
    n = *n_opt;
    a = read_vector(m, read_json_arg(a_arg));
    b = read_vector(m, read_json_arg(b_arg));
  }
  if (n < 0) throw UsageError("--n must be a nonnegative integer");
  check_weight(a, n, "A");
  check_weight(b, n, "B");
  auto store = open_store(c);
  CupEngine engine(m, store.get());
  print_vector(m, engine.cup(a, b, n), c);
  return 0;
}

int cmd_structure_constants(const Common& c, int max_weight) {
  if (max_weight < 1) throw UsageError("--max-weight must be at least 1");
  const auto m = load_model(c.model);
  auto store = open_store(c);
  CupEngine engine(m, store.get());
  Output out(c.out);
  write_structure_table(engine, max_weight, out.stream(), c.jobs);
  return 0;
}

int cmd_verify(const Common& c, const std::string& suite, bool model_given) {
  std::vector<const SuiteInfo*> chosen;
  if (suite == "all") {
    for (const auto& s : all_suites()) chosen.push_back(&s);
  } else if (const auto* s = find_suite(suite)) {
    chosen.push_back(s);
  } else {
    std::string names;
    for (const auto& s : all_suites()) names += " " + s.name;
    throw UsageError("unknown suite '" + suite + "'; available:" + names + " all");
  }
  std::optional<SurfaceModel> model;
  SuiteOptions opts;
  if (model_given) {
    model = load_model(c.model);
    opts.models.push_back(&*model);
  }
  auto store = open_store(c);
  opts.store = store.get();
  bool ok = true;
  for (const auto* s : chosen) {
    const auto r = s->run(opts);
    print_suite(r, c);
    ok = ok && r.passed();
  }
  return ok ? 0 : 1;
}

std::vector<ChernFactor> read_gens(const SurfaceModel& m, const json& j) {
  if (!j.is_array()) throw UsageError("gens must be an array of {\"k\", \"alpha\"}");
  std::vector<ChernFactor> out;
  try {
    for (const auto& g : j) {
      const int k = g.at("k").get<int>();
      if (k < 0) throw UsageError("k must be nonnegative");
      out.push_back({k, cohclass_from_json(m, g.at("alpha"))});
    }
  } catch (const json::exception& e) {
    throw UsageError(std::string("bad generator: ") + e.what());
  } catch (const SchemaError& e) {
    throw UsageError(std::string("bad generator: ") + e.what());
  }
  return out;
}

int cmd_intersect(const Common& c, std::optional<int> n_opt, const std::string& request) {
  const auto m = load_model(c.model);
  const auto req = read_json_arg(request);
  json gens_json = req;
  int n = n_opt.value_or(-1);
  if (req.is_object()) {
    gens_json = req.value("gens", json::array());
    if (!n_opt) n = req.value("n", -1);
  }
  if (n < 0) throw UsageError("the number of points n is required");
  const auto gens = read_gens(m, gens_json);
  for (const auto& g : gens)
    if (!g.alpha.is_zero()) {
      try {
        m.degree_of(g.alpha);
      } catch (const std::exception& e) {
        throw UsageError(std::string("alpha must be homogeneous: ") + e.what());
      }
    }
  auto store = open_store(c);
  CupEngine engine(m, store.get());
  const auto value = engine.intersection(gens, n);
  Output out(c.out);
  out.stream() << to_string(value) << '\n';
  return 0;
}

int cmd_expand_chern(const Common& c, int k, const std::string& alpha_arg, int r, const std::string& beta_arg,
                     int budget) {
  if (k < 0 || r < 1 || budget < 0) throw UsageError("need k >= 0, r >= 1 and budget >= 0");
  const auto m = load_model(c.model);
  auto parse_class = [&](const std::string& s) {
    try {
      const auto first = s.find_first_not_of(' ');
      return cohclass_from_json(m, first != std::string::npos && s[first] == '{' ? json::parse(s) : json(s));
    } catch (const std::exception& e) {
      throw UsageError(std::string("bad class: ") + e.what());
    }
  };
  const auto alpha = parse_class(alpha_arg);
  std::vector<std::pair<std::string, CohClass>> betas;
  if (beta_arg.empty())
    for (const auto& b : m.basis()) betas.emplace_back(b.name, CohClass::basis(b.index));
  else
    betas.emplace_back(beta_arg, parse_class(beta_arg));

  auto store = open_store(c);
  ChernCalculus chern(m);
  json result = json::object();
  for (const auto& [label, beta] : betas) {
    const auto key = "chern_commutator|" + m.fingerprint() + "|" + std::to_string(k) + "|" +
                     cohclass_to_json(m, alpha).dump() + "|" + std::to_string(r) + "|" + cohclass_to_json(m, beta).dump() +
                     "|" + std::to_string(budget);
    std::optional<std::string> cached;
    if (store) cached = store->get(key);
    json op;
    if (cached) {
      op = json::parse(*cached);
    } else {
      op = operator_to_json(m, chern.chern_commutator(k, alpha, r, beta, budget));
      if (store) store->put(key, op.dump());
    }
    result[label] = op;
  }
  Output out(c.out);
  out.stream() << (c.format == "pretty" ? result.dump(2) : result.dump()) << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact cup products and Chern character calculus on Hilbert schemes of points on surfaces"};
  app.require_subcommand(1);
  Common c;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--model", c.model, "model file or builtin:NAME (P2, P1xP1, K3like, Abelianlike)");
    sub->add_flag("--no-cache", c.no_cache, "do not read or write the persistent cache");
    sub->add_option("--cache-dir", c.cache_dir, "cache directory")->envname("HILBCALC_CACHE");
    sub->add_option("--jobs", c.jobs, "worker threads for tabulation")->check(CLI::PositiveNumber);
    sub->add_option("--format", c.format, "output format")->check(CLI::IsMember({"json", "pretty"}));
    sub->add_option("--out", c.out, "write the result to a file instead of stdout");
  };

  auto* surface = app.add_subcommand("surface-check", "validate a model and its pushforward identities");
  add_common(surface);

  std::optional<int> n;
  std::string a_arg, b_arg;
  auto* cup = app.add_subcommand("cup", "cup product of two classes on X^[n]");
  add_common(cup);
  cup->add_option("--n", n, "number of points");
  cup->add_option("A", a_arg, "first class (JSON or file), or a request {\"n\",\"A\",\"B\"}")->required();
  cup->add_option("B", b_arg, "second class (JSON or file)");

  int max_weight = 3;
  auto* sc = app.add_subcommand("structure-constants", "tabulate the stable structure constants");
  add_common(sc);
  sc->add_option("--max-weight,-w", max_weight, "bound on |rho| + |sigma|");

  std::string suite = "all";
  auto* verify = app.add_subcommand("verify", "run an acceptance suite");
  add_common(verify);
  verify->add_option("suite", suite, "suite name or 'all'");

  std::string request;
  auto* intersect = app.add_subcommand("intersect", "integral over X^[n] of a product of Chern characters");
  add_common(intersect);
  intersect->add_option("--n", n, "number of points");
  intersect->add_option("request", request, "{\"n\", \"gens\": [{\"k\", \"alpha\"}]} or just the gens array")->required();

  int k = 0, r = 1, budget = 4;
  std::string alpha, beta;
  auto* expand = app.add_subcommand("expand-chern", "the commutator [G_k(alpha), a_{-r}(beta)] as normally ordered words");
  add_common(expand);
  expand->add_option("--k", k, "Chern character index")->required();
  expand->add_option("--alpha", alpha, "class name or {name: coeff}")->required();
  expand->add_option("--r", r, "creation index");
  expand->add_option("--beta", beta, "class name or {name: coeff}; all basis classes if omitted");
  expand->add_option("--budget", budget, "largest annihilation weight kept");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  const bool model_given = app.get_subcommands().front()->count("--model") > 0;
  try {
    if (*surface) return cmd_surface_check(c);
    if (*cup) return cmd_cup(c, n, a_arg, b_arg);
    if (*sc) return cmd_structure_constants(c, max_weight);
    if (*verify) return cmd_verify(c, suite, model_given);
    if (*intersect) return cmd_intersect(c, n, request);
    if (*expand) return cmd_expand_chern(c, k, alpha, r, beta, budget);
  } catch (const UsageError& e) {
    std::cerr << "hilbcalc: " << e.what() << '\n';
    return 2;
  } catch (const InvalidModel& e) {
    std::cerr << "hilbcalc: invalid model: " << e.report().summary() << '\n';
    return 1;
  } catch (const WeightMismatch& e) {
    std::cerr << "hilbcalc: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "hilbcalc: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
