#include "sublat/cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <sstream>

#include "sublat/enumerate.hpp"
#include "sublat/poly_cache.hpp"
#include "sublat/polyalg.hpp"

namespace sublat {

namespace {

using nlohmann::json;

json class_rows(const VerifySection& s) {
  auto rows = json::array();
  for (const auto& c : s.classes)
    rows.push_back({{"key", c.key.divisors()}, {"formula", c.formula.str()}, {"oracle", c.oracle.str()}, {"match", c.match}});
  return rows;
}

json check_rows(const std::vector<NamedCheck>& checks) {
  auto rows = json::array();
  for (const auto& c : checks)
    rows.push_back({{"name", c.name}, {"expected", c.expected}, {"observed", c.observed}, {"match", c.match}});
  return rows;
}

}  // namespace

json report_to_json(const VerifyReport& report, bool include_timing) {
  json j;
  j["scope"] = report.scope;
  j["all_match"] = report.all_match();
  auto sections = json::array();
  for (const auto& s : report.sections)
    sections.push_back({{"n", s.n}, {"m", s.m}, {"all_match", s.all_match()}, {"classes", class_rows(s)},
                        {"checks", check_rows(s.checks)}});
  j["sections"] = std::move(sections);
  j["checks"] = check_rows(report.checks);
  if (include_timing) j["elapsed_seconds"] = report.elapsed_seconds;
  return j;
}

namespace {

// Thrown for argument combinations CLI11 cannot express.
struct ValidationError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

enum class Format { Json, Csv, Plain };

struct Common {
  std::string format = "json";
  std::string cache;

  Format fmt() const { return format == "csv" ? Format::Csv : format == "plain" ? Format::Plain : Format::Json; }
};

void add_format(CLI::App* app, Common& c) {
  app->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"json", "csv", "plain"}));
}

void add_cache(CLI::App* app, Common& c) {
  app->add_option("--cache", c.cache, "Class-polynomial cache file (default: $SUBLATTICE_CACHE)");
}

std::vector<std::int64_t> parse_list(const std::string& s, const char* what) {
  std::vector<std::int64_t> out;
  std::stringstream ss(s);
  for (std::string tok; std::getline(ss, tok, ',');) {
    std::size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(tok, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (tok.empty() || used != tok.size()) throw ValidationError(std::string(what) + ": bad integer '" + tok + "'");
    out.push_back(v);
  }
  if (out.empty()) throw ValidationError(std::string(what) + ": empty list");
  return out;
}

Partition parse_partition(const std::string& s, int n) {
  std::vector<int> parts;
  for (auto v : parse_list(s, "--partition")) {
    if (v < 0 || v > 1000) throw ValidationError("--partition: parts must lie in [0, 1000]");
    parts.push_back(static_cast<int>(v));
  }
  if (static_cast<int>(parts.size()) != n)
    throw ValidationError("--partition: expected " + std::to_string(n) + " parts, got " + std::to_string(parts.size()));
  try {
    return Partition(std::move(parts));
  } catch (const std::invalid_argument& e) {
    throw ValidationError(e.what());
  }
}

void require_prime(std::int64_t p) {
  if (!is_prime(p)) throw ValidationError("--prime: " + std::to_string(p) + " is not prime");
}

// Emits a flat record of scalar fields in the requested format.
class Record {
 public:
  Record(std::string command) : command_(std::move(command)) {}

  Record& field(const std::string& name, json value) {
    fields_.emplace_back(name, std::move(value));
    return *this;
  }

  void emit(std::ostream& out, Format f, const std::string& plain) const {
    if (f == Format::Plain) {
      out << plain << "\n";
      return;
    }
    if (f == Format::Csv) {
      out << "schema_version,command";
      for (const auto& [k, v] : fields_) out << "," << k;
      out << "\n" << kSchemaVersion << "," << command_;
      for (const auto& [k, v] : fields_) out << "," << csv_cell(v);
      out << "\n";
      return;
    }
    json payload = json::object();
    for (const auto& [k, v] : fields_) payload[k] = v;
    out << json{{"schema_version", kSchemaVersion}, {"command", command_}, {"payload", payload}}.dump() << "\n";
  }

 private:
  static std::string csv_cell(const json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_array()) {
      std::string s;
      for (const auto& e : v) s += (s.empty() ? "" : ";") + (e.is_string() ? e.get<std::string>() : e.dump());
      return s;
    }
    return v.dump();
  }

  std::string command_;
  std::vector<std::pair<std::string, json>> fields_;
};

std::string cache_path(const Common& c) {
  if (!c.cache.empty()) return c.cache;
  if (const char* env = std::getenv("SUBLATTICE_CACHE")) return env;
  return {};
}

// Class-polynomial table backed by the optional cache file.
struct CachedTable {
  CachedTable(const Common& c, std::ostream& err) : path(cache_path(c)), err(err) {
    if (!path.empty()) load_poly_cache(path, table, err);
  }
  ~CachedTable() {
    if (path.empty()) return;
    try {
      store_poly_cache(path, table);
    } catch (const std::exception& e) {
      err << "warning: " << e.what() << "\n";
    }
  }
  bool enabled() const { return !path.empty(); }

  std::string path;
  std::ostream& err;
  ClassPolyTable table;
};

std::string echo(const std::string& base, std::initializer_list<std::pair<const char*, std::string>> opts) {
  std::string s = base;
  for (const auto& [k, v] : opts) {
    if (v.empty()) continue;
    s += std::string(" --") + k;
    if (v != "\x01") s += " " + v;
  }
  return s;
}

json poly_json(const IntPoly& p) { return coefficients_json(p); }

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Sublattice census: counts, enumeration, class polynomials and exhaustive verification"};
  app.require_subcommand(1);
  app.name("sublattice");

  // count
  auto* count = app.add_subcommand("count", "Exact counts")->require_subcommand(1);
  Common cc;
  int n = 0;
  std::int64_t m = 0, p = 0, max_v = 0;
  std::string method = "closed", divisors_arg, partition_arg;
  int r = 0;

  auto* c_fn = count->add_subcommand("fn", "Number of sublattices of index m");
  c_fn->add_option("--n", n)->required();
  c_fn->add_option("--m", m)->required();
  c_fn->add_option("--method", method)->check(CLI::IsMember({"closed", "recursion"}));
  auto* c_gn = count->add_subcommand("gn", "Number of equivalence classes of index m");
  c_gn->add_option("--n", n)->required();
  c_gn->add_option("--m", m)->required();
  auto* c_class = count->add_subcommand("class", "Size of one equivalence class");
  c_class->add_option("--divisors", divisors_arg, "Invariant factors d1,...,dn");
  c_class->add_option("--n", n);
  c_class->add_option("--prime", p);
  c_class->add_option("--partition", partition_arg, "Exponents a1<=...<=an");
  auto* c_co = count->add_subcommand("cocyclic", "Co-cyclic sublattices of index m");
  c_co->add_option("--n", n)->required();
  c_co->add_option("--m", m)->required();
  auto* c_cum = count->add_subcommand("cocyclic-cumulative", "Co-cyclic sublattices of index <= V");
  c_cum->add_option("--n", n)->required();
  c_cum->add_option("--max", max_v)->required();
  for (auto* sub : {c_fn, c_gn, c_class, c_co, c_cum}) {
    add_format(sub, cc);
    add_cache(sub, cc);
  }

  // enumerate
  auto* en = app.add_subcommand("enumerate", "Stream HNF matrices as JSON lines");
  bool with_snf = false;
  std::uint64_t limit = 0, budget = 0;
  en->add_option("--n", n)->required();
  en->add_option("--m", m)->required();
  en->add_flag("--with-snf", with_snf);
  en->add_option("--limit", limit);
  en->add_option("--budget", budget);

  // poly
  auto* poly = app.add_subcommand("poly", "Class polynomials in T")->require_subcommand(1);
  Common pc;
  auto* p_class = poly->add_subcommand("class", "g_alpha(T) for one partition");
  p_class->add_option("--n", n)->required();
  p_class->add_option("--partition", partition_arg)->required();
  auto* p_co = poly->add_subcommand("cocyclic", "Co-cyclic class polynomial");
  auto* p_fn = poly->add_subcommand("fn", "f_n(T^r) as a polynomial");
  auto* p_lead = poly->add_subcommand("leading-check", "Shared leading terms of f_n and co-cyclic polynomials");
  for (auto* sub : {p_co, p_fn, p_lead}) {
    sub->add_option("--n", n)->required();
    sub->add_option("--r", r)->required();
  }
  for (auto* sub : {p_class, p_co, p_fn, p_lead}) {
    add_format(sub, pc);
    add_cache(sub, pc);
  }

  // verify
  auto* ver = app.add_subcommand("verify", "Formula vs exhaustive oracle");
  Common vc;
  std::string suite_word;
  unsigned jobs = 1;
  int max_r = -1;
  bool timing = false;
  ver->add_option("scope", suite_word, "'suite' for the full sweep")->check(CLI::IsMember({"suite"}));
  ver->add_option("--n", n);
  ver->add_option("--m", m);
  ver->add_option("--prime", p);
  ver->add_option("--max-r", max_r);
  ver->add_option("--jobs", jobs)->check(CLI::Range(1u, 256u));
  ver->add_option("--budget", budget);
  ver->add_flag("--timing", timing, "Include elapsed time in the report");
  add_format(ver, vc);

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitValidation;
  }

  try {
    auto need_positive = [](std::int64_t v, const char* name) {
      if (v < 1) throw ValidationError(std::string(name) + " must be >= 1");
    };
    auto need_dim = [](int v) {
      if (v < 1 || v > 64) throw ValidationError("--n must lie in [1, 64]");
    };

    if (*count) {
      const Format f = cc.fmt();
      if (*c_fn) {
        need_dim(n);
        need_positive(m, "--m");
        const BigInt v = method == "recursion" ? f_n_recursion(n, m) : f_n_closed(n, m);
        Record(echo("count fn", {{"n", std::to_string(n)}, {"m", std::to_string(m)}, {"method", method}}))
            .field("kind", "fn").field("n", n).field("m", m).field("method", method).field("result", v.str())
            .emit(out, f, v.str());
      } else if (*c_gn) {
        need_dim(n);
        need_positive(m, "--m");
        const BigInt v = g_n(n, m);
        Record(echo("count gn", {{"n", std::to_string(n)}, {"m", std::to_string(m)}}))
            .field("kind", "gn").field("n", n).field("m", m).field("result", v.str())
            .emit(out, f, v.str());
      } else if (*c_class) {
        CachedTable cache(cc, err);
        SmithForm chain;
        if (!divisors_arg.empty()) {
          if (!partition_arg.empty() || p != 0) throw ValidationError("use either --divisors or --prime/--partition");
          try {
            chain = SmithForm(parse_list(divisors_arg, "--divisors"));
          } catch (const ValidationError&) {
            throw;
          } catch (const std::invalid_argument& e) {
            throw ValidationError(e.what());
          }
          if (n != 0 && n != chain.n()) throw ValidationError("--n does not match the number of divisors");
        } else {
          if (partition_arg.empty() || p == 0 || n == 0)
            throw ValidationError("count class needs --divisors, or --n with --prime and --partition");
          need_dim(n);
          require_prime(p);
          const Partition alpha = parse_partition(partition_arg, n);
          std::vector<std::int64_t> d;
          for (int a : alpha.parts()) d.push_back(checked_pow(p, static_cast<unsigned>(a)));
          chain = SmithForm(std::move(d));
        }
        BigInt v = 1;
        if (cache.enabled()) {
          for (const auto& [q, alpha] : prime_components(chain)) v *= f_alpha_poly(alpha, cache.table).eval(q);
        } else {
          v = f_class(chain);
        }
        auto divs = json::array();
        for (auto d : chain.divisors()) divs.push_back(d);
        Record(echo("count class", {{"divisors", chain.to_string()}}))
            .field("kind", "class").field("n", chain.n()).field("divisors", divs).field("result", v.str())
            .emit(out, f, v.str());
      } else if (*c_co) {
        need_dim(n);
        need_positive(m, "--m");
        const BigInt v = cocyclic_general(n, m);
        Record(echo("count cocyclic", {{"n", std::to_string(n)}, {"m", std::to_string(m)}}))
            .field("kind", "cocyclic").field("n", n).field("m", m).field("result", v.str())
            .emit(out, f, v.str());
      } else if (*c_cum) {
        need_dim(n);
        need_positive(max_v, "--max");
        const BigInt v = cocyclic_cumulative(n, max_v);
        Record(echo("count cocyclic-cumulative", {{"n", std::to_string(n)}, {"max", std::to_string(max_v)}}))
            .field("kind", "cocyclic-cumulative").field("n", n).field("max", max_v).field("result", v.str())
            .emit(out, f, v.str());
      }
      return kExitOk;
    }

    if (*en) {
      need_dim(n);
      need_positive(m, "--m");
      const std::uint64_t b = budget ? budget : OracleOptions{}.budget;
      if (limit == 0 || limit > b) check_budget(n, m, b);
      HnfStream stream(n, m);
      std::uint64_t emitted = 0;
      SmithWorkspace ws;
      std::vector<std::int64_t> snf(n);
      while (const HnfMatrix* h = stream.next()) {
        if (limit && emitted == limit) break;
        json rows = json::array();
        for (int i = 0; i < n; ++i) {
          json row = json::array();
          for (int j = 0; j < n; ++j) row.push_back((*h)(i, j));
          rows.push_back(std::move(row));
        }
        json line = {{"schema_version", kSchemaVersion}, {"matrix", std::move(rows)}};
        if (with_snf) {
          ws.compute(h->entries(), n, snf);
          line["snf"] = snf;
        }
        out << line.dump() << "\n";
        ++emitted;
      }
      return kExitOk;
    }

    if (*poly) {
      const Format f = pc.fmt();
      CachedTable cache(pc, err);
      auto emit_poly = [&](const std::string& kind, Record rec, const IntPoly& g) {
        rec.field("kind", kind).field("coefficients", poly_json(g)).field("polynomial", g.to_string());
        rec.emit(out, f, g.to_string());
      };
      if (*p_class) {
        need_dim(n);
        const Partition alpha = parse_partition(partition_arg, n);
        const IntPoly g = f_alpha_poly(alpha, cache.table);
        const std::string cmd = echo("poly class", {{"n", std::to_string(n)}, {"partition", alpha.to_string()}});
        emit_poly("class", Record(cmd).field("n", n).field("partition", alpha.parts()), g);
        return kExitOk;
      }
      need_dim(n);
      if (r < 0) throw ValidationError("--r must be >= 0");
      const std::string nr_n = std::to_string(n), nr_r = std::to_string(r);
      if (*p_co) {
        if (r < 1) throw ValidationError("--r must be >= 1");
        const std::string cmd = echo("poly cocyclic", {{"n", nr_n}, {"r", nr_r}});
        emit_poly("cocyclic", Record(cmd).field("n", n).field("r", r), cocyclic_poly(n, r));
        return kExitOk;
      }
      if (*p_fn) {
        const std::string cmd = echo("poly fn", {{"n", nr_n}, {"r", nr_r}});
        emit_poly("fn", Record(cmd).field("n", n).field("r", r), fn_primepower_poly(n, r, cache.table));
        return kExitOk;
      }
      if (*p_lead) {
        if (n < 2 || r < 1) throw ValidationError("leading-check needs --n >= 2 and --r >= 1");
        const auto rep = leading_terms_check(n, r, cache.table);
        Record(echo("poly leading-check", {{"n", nr_n}, {"r", nr_r}}))
            .field("kind", "leading-check").field("n", n).field("r", r).field("match", rep.match)
            .field("degree", rep.degree)
            .field("fn_coefficients", poly_json(rep.all_sublattices))
            .field("cocyclic_coefficients", poly_json(rep.cocyclic))
            .field("detail", rep.detail)
            .emit(out, f, std::string("match=") + (rep.match ? "true" : "false"));
        return rep.match ? kExitOk : kExitMismatch;
      }
    }

    if (*ver) {
      OracleOptions opts;
      opts.jobs = jobs;
      VerifyReport rep;
      std::string cmd;
      if (!suite_word.empty()) {
        if (n || m || p || max_r >= 0) throw ValidationError("verify suite takes no --n/--m/--prime/--max-r");
        opts.budget = budget ? budget : kSuiteBudget;
        cmd = "verify suite";
        rep = verify_suite(opts);
      } else {
        need_dim(n);
        if (budget) opts.budget = budget;
        if (p != 0 || max_r >= 0) {
          if (m != 0) throw ValidationError("use either --m or --prime with --max-r");
          require_prime(p);
          if (max_r < 0) throw ValidationError("--max-r is required with --prime");
          cmd = echo("verify", {{"n", std::to_string(n)}, {"prime", std::to_string(p)}, {"max-r", std::to_string(max_r)}});
          rep = verify_prime(n, p, max_r, opts);
        } else {
          need_positive(m, "--m");
          cmd = echo("verify", {{"n", std::to_string(n)}, {"m", std::to_string(m)}});
          rep = verify_single(n, m, opts);
        }
      }
      const Format f = vc.fmt();
      if (f == Format::Json) {
        out << json{{"schema_version", kSchemaVersion}, {"command", cmd}, {"payload", report_to_json(rep, timing)}}.dump()
            << "\n";
      } else if (f == Format::Csv) {
        out << "n,m,key,formula,oracle,match\n";
        for (const auto& s : rep.sections)
          for (const auto& c : s.classes)
            out << s.n << "," << s.m << "," << c.key.to_string() << "," << c.formula << "," << c.oracle << ","
                << (c.match ? "true" : "false") << "\n";
      } else {
        for (const auto& s : rep.sections) {
          out << "n=" << s.n << " m=" << s.m << ": " << (s.all_match() ? "ok" : "MISMATCH") << " (" << s.classes.size()
              << " classes)\n";
          for (const auto& c : s.checks)
            if (!c.match) out << "  " << c.name << ": expected " << c.expected << ", observed " << c.observed << "\n";
        }
        for (const auto& c : rep.checks)
          out << c.name << ": " << (c.match ? "ok" : "MISMATCH") << " (" << c.observed << ")\n";
        out << (rep.all_match() ? "all checks match" : "MISMATCH") << "\n";
        if (timing) out << "elapsed " << rep.elapsed_seconds << " s\n";
      }
      return rep.all_match() ? kExitOk : kExitMismatch;
    }
  } catch (const BudgetExceeded& e) {
    err << "error: " << e.what() << "\n";
    return kExitBudget;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitMismatch;
  }
  return kExitOk;
}

}  // namespace sublat
