#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "ahlab/field.hpp"
#include "ahlab/interpolation.hpp"
#include "ahlab/schemes.hpp"
#include "ahlab/sylvester.hpp"
#include "ahlab/verifier.hpp"
#include "ahlab/witness.hpp"
#include "cache.hpp"

namespace ahlab::cli {

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string field = "prime";
  std::uint64_t prime = kDefaultPrime;
  bool allow_small_prime = false;
  std::uint64_t seed = 1;
  unsigned trials = 3;
  bool no_retry = false;
  double tolerance = 1e-8;
  std::string cache_dir;
  std::string format = "json";

  FieldConfig field_config() const {
    if (field == "rationals") return FieldConfig::rationals();
    return FieldConfig::prime_field(prime, allow_small_prime);
  }

  HilbertOptions hilbert_options() const {
    HilbertOptions o;
    o.field = field_config();
    o.seed = seed;
    o.trials = trials;
    o.retry = !no_retry;
    return o;
  }

  nlohmann::json to_json() const {
    nlohmann::json f = {{"kind", field_config().kind_name()}, {"prime", nullptr}};
    if (field != "rationals") f["prime"] = prime;
    return {{"field", f}, {"seed", seed}, {"trials", trials}, {"retry", !no_retry}, {"tolerance", tolerance}};
  }
};

struct Output {
  nlohmann::json result;
  std::string csv;
  std::string text;
  bool cached = false;
  int code = kOk;
};

struct Context {
  RunConfig cfg;
  std::unique_ptr<ReportCache> cache;
};

void strip_timing(nlohmann::json& j) {
  if (j.is_object()) {
    j.erase("elapsed_ms");
    for (auto& [key, value] : j.items()) strip_timing(value);
  } else if (j.is_array()) {
    for (auto& value : j) strip_timing(value);
  }
}

nlohmann::json hilbert_key(const CaseId& c, const HilbertOptions& o) {
  nlohmann::json f = {{"kind", o.field.kind_name()}, {"prime", nullptr}};
  if (o.field.kind == FieldKind::prime_field) f["prime"] = o.field.prime;
  return {{"command", "hilbert"}, {"n", c.n},         {"d", c.d},          {"k", c.k},
          {"field", f},           {"seed", o.seed},   {"trials", o.trials}, {"retry", o.retry}};
}

std::optional<HilbertReport> cache_lookup(const Context& ctx, const nlohmann::json& key) {
  if (!ctx.cache) return std::nullopt;
  const auto hit = ctx.cache->lookup(cache_key(key));
  if (!hit) return std::nullopt;
  auto r = HilbertReport::from_json(*hit);
  r.cached = true;
  return r;
}

void cache_store(const Context& ctx, const nlohmann::json& key, const HilbertReport& r) {
  if (ctx.cache) ctx.cache->append(cache_key(key), key.at("command").get<std::string>(), key, r.to_json());
}

HilbertReport double_points_report(const Context& ctx, const CaseId& c, const HilbertOptions& o) {
  const auto key = hilbert_key(c, o);
  if (auto hit = cache_lookup(ctx, key)) return *hit;
  auto r = hilbert_double_points(c.n, c.d, c.k, o);
  cache_store(ctx, key, r);
  return r;
}

std::string hilbert_line(const HilbertReport& r) {
  std::ostringstream os;
  os << "h(" << r.n << "," << r.d;
  if (r.k) os << "," << *r.k;
  os << ") = " << r.computed << " expected " << r.expected << " defect " << r.defect << " " << to_string(r.verdict)
     << " [" << to_string(r.certification) << "]";
  if (r.cached) os << " (cached)";
  return os.str();
}

nlohmann::json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path);
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(path + ": malformed JSON: " + e.what());
  }
}

std::vector<mpq_class> parse_coeffs(const std::string& s) {
  std::vector<mpq_class> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto b = item.find_first_not_of(" \t");
    const auto e = item.find_last_not_of(" \t");
    if (b == std::string::npos) throw UsageError("empty coefficient in --coeffs");
    item = item.substr(b, e - b + 1);
    if (item.front() == '+') item.erase(0, 1);
    mpq_class q;
    if (q.set_str(item, 10) != 0) throw UsageError("not a rational number: " + item);
    q.canonicalize();
    out.push_back(q);
  }
  if (out.empty()) throw UsageError("--coeffs needs at least one value");
  return out;
}

std::string complex_text(Complex z) {
  std::ostringstream os;
  os.precision(10);
  const double re = std::abs(z.real()) < 1e-14 ? 0.0 : z.real();
  const double im = std::abs(z.imag()) < 1e-14 ? 0.0 : z.imag();
  if (im == 0.0) {
    os << re;
  } else {
    os << "(" << re << (im < 0 ? " - " : " + ") << std::abs(im) << "i)";
  }
  return os.str();
}

// hilbert ---------------------------------------------------------------------

struct HilbertArgs {
  unsigned n = 0;
  unsigned d = 0;
  std::size_t points = 0;
  std::string scheme;
};

Output cmd_hilbert(Context& ctx, const HilbertArgs& a, bool have_n, bool have_points) {
  Output out;
  const auto o = ctx.cfg.hilbert_options();
  if (!a.scheme.empty()) {
    const auto j = read_json_file(a.scheme);
    SchemeSpec<Rationals> spec;
    try {
      spec = scheme_from_json(j);
    } catch (const std::exception& e) {
      throw UsageError(a.scheme + ": " + e.what());
    }
    if (have_n && spec.n != a.n) throw UsageError("--n disagrees with the scheme file");
    nlohmann::json key = hilbert_key({spec.n, a.d, 0}, o);
    key.erase("k");
    key["command"] = "hilbert-scheme";
    key["scheme"] = fnv1a_hex(scheme_to_json(spec).dump());
    HilbertReport r;
    if (auto hit = cache_lookup(ctx, key)) {
      r = *hit;
    } else {
      r = hilbert_fixed(spec, a.d, o);
      cache_store(ctx, key, r);
    }
    out.result = r.to_json();
    out.cached = r.cached;
    out.text = hilbert_line(r);
    return out;
  }
  if (!have_n || !have_points) throw UsageError("hilbert needs --n with --points, or --scheme");
  const CaseId c{a.n, a.d, a.points};
  const auto r = double_points_report(ctx, c, o);
  const auto ex = is_exception(c);
  out.result = r.to_json();
  out.result["known_exception"] = ex.has_value();
  if (ex) out.result["exception_reason"] = to_string(ex->reason);
  out.cached = r.cached;
  out.text = hilbert_line(r) + (ex ? " known exception: " + to_string(ex->reason) : "");
  SweepRow row{c, r, ex.has_value(), (r.defect > 0) == ex.has_value()};
  out.csv = sweep_csv({row});
  out.code = row.agrees ? kOk : kDisagreement;
  return out;
}

// sweep -----------------------------------------------------------------------

struct SweepArgs {
  unsigned n_lo = 1, n_hi = 5, d_lo = 2, d_hi = 8;
  unsigned threads = 0;
};

Output cmd_sweep(Context& ctx, const SweepArgs& a) {
  if (a.n_lo < 1 || a.n_lo > a.n_hi || a.d_lo < 1 || a.d_lo > a.d_hi) throw UsageError("empty or invalid sweep range");
  Output out;
  const auto o = ctx.cfg.hilbert_options();
  SweepHooks hooks;
  if (ctx.cache) {
    hooks.lookup = [&](const CaseId& c, const HilbertOptions& co) { return cache_lookup(ctx, hilbert_key(c, co)); };
    hooks.computed = [&](const SweepRow& row, const HilbertOptions& co) {
      cache_store(ctx, hilbert_key(row.id, co), row.report);
    };
  }
  const auto rows = sweep(sweep_cases(a.n_lo, a.n_hi, a.d_lo, a.d_hi), o, a.threads, hooks);
  nlohmann::json jr = nlohmann::json::array();
  std::size_t disagreements = 0;
  std::size_t hits = 0;
  std::ostringstream text;
  for (const auto& r : rows) {
    nlohmann::json j = r.report.to_json();
    j["known_exception"] = r.predicted_exception;
    j["agrees"] = r.agrees;
    jr.push_back(j);
    if (!r.agrees) ++disagreements;
    if (r.report.cached) ++hits;
    text << hilbert_line(r.report) << (r.predicted_exception ? " known exception" : "")
         << (r.agrees ? "" : " DISAGREES") << "\n";
  }
  text << rows.size() << " cases, " << disagreements << " disagreements";
  out.result = {{"range", {{"n", {a.n_lo, a.n_hi}}, {"d", {a.d_lo, a.d_hi}}}},
                {"rows", jr},
                {"cases", rows.size()},
                {"disagreements", disagreements},
                {"cache_hits", hits}};
  out.cached = !rows.empty() && hits == rows.size();
  out.csv = sweep_csv(rows);
  out.text = text.str();
  out.code = disagreements == 0 ? kOk : kDisagreement;
  return out;
}

// verify-ah -------------------------------------------------------------------

struct CaseArgs {
  unsigned n = 0;
  unsigned d = 0;
  std::size_t k = 0;
};

Output cmd_verify(Context& ctx, const CaseArgs& a, bool have_k) {
  Output out;
  const auto o = ctx.cfg.hilbert_options();
  std::vector<std::size_t> ks;
  if (have_k) {
    ks.push_back(a.k);
  } else {
    const auto [lo, hi] = critical_k(a.n, a.d);
    ks.push_back(lo);
    if (hi != lo) ks.push_back(hi);
  }
  nlohmann::json cases = nlohmann::json::array();
  bool all_agree = true;
  bool all_cached = true;
  std::ostringstream text;
  for (const auto k : ks) {
    const CaseId c{a.n, a.d, k};
    const auto r = double_points_report(ctx, c, o);
    all_cached = all_cached && r.cached;
    const auto ex = is_exception(c);
    nlohmann::json entry = {{"case", c.to_json()}, {"hilbert", r.to_json()}, {"known_exception", ex.has_value()}};
    bool agrees = false;
    text << hilbert_line(r);
    if (ex) {
      entry["exception_reason"] = to_string(ex->reason);
      agrees = r.defect > 0;
      text << " known exception: " << to_string(ex->reason);
    } else {
      const auto cert = build_certificate(c);
      const auto check = check_certificate(cert, o);
      const auto* root = cert.find(c);
      entry["certificate"] = {{"root_rule", to_string(root->rule)},
                              {"nodes", cert.nodes.size()},
                              {"check", check.to_json()}};
      agrees = r.defect == 0 && check.accepted;
      text << " certificate " << to_string(root->rule) << " (" << cert.nodes.size() << " nodes) "
           << (check.accepted ? "accepted" : "rejected: " + check.reason);
    }
    entry["agrees"] = agrees;
    all_agree = all_agree && agrees;
    cases.push_back(entry);
    text << (agrees ? "" : " DISAGREES") << "\n";
  }
  out.result = {{"cases", cases}, {"agrees", all_agree}};
  out.cached = all_cached;
  out.text = text.str();
  if (!out.text.empty()) out.text.pop_back();
  out.code = all_agree ? kOk : kDisagreement;
  return out;
}

// certificate -----------------------------------------------------------------

Output cmd_certificate(Context& ctx, const CaseArgs& a, bool have_case, const std::string& input, bool check) {
  Output out;
  const auto o = ctx.cfg.hilbert_options();
  Certificate cert;
  if (!input.empty()) {
    try {
      cert = Certificate::from_json(read_json_file(input));
    } catch (const UsageError&) {
      throw;
    } catch (const std::exception& e) {
      throw UsageError(input + ": malformed certificate: " + e.what());
    }
    check = true;
  } else {
    if (!have_case) throw UsageError("certificate needs --n, --d and --k, or --input");
    const CaseId c{a.n, a.d, a.k};
    if (const auto ex = is_exception(c)) {
      out.result = {{"case", c.to_json()}, {"exceptional", true}, {"reason", to_string(ex->reason)}};
      out.text = c.to_string() + " is exceptional (" + to_string(ex->reason) + "); no certificate exists";
      return out;
    }
    cert = build_certificate(c);
  }
  out.result = {{"certificate", cert.to_json()}};
  out.text = cert.root.to_string() + ": " + std::to_string(cert.nodes.size()) + " nodes";
  if (check) {
    const auto res = check_certificate(cert, o);
    out.result["check"] = res.to_json();
    out.text += res.accepted ? ", accepted" : ", rejected: " + res.reason;
    if (!res.accepted) out.code = kDisagreement;
  }
  return out;
}

// witness ---------------------------------------------------------------------

Output cmd_witness(Context& ctx, const CaseArgs& a, long bound) {
  Output out;
  const CaseId c{a.n, a.d, a.k};
  if (!is_exception(c)) throw UsageError(c.to_string() + " is not an exceptional case");
  const auto w = witness_for_exception(c, ctx.cfg.seed, bound);
  out.result = w.to_json();
  const bool ok = w.witness.verified && w.in_kernel && w.defect > 0;
  out.text = c.to_string() + " defect " + std::to_string(w.defect) + ", degree-" + std::to_string(w.witness.form.d) +
             " witness singular at all " + std::to_string(w.witness.points.size()) + " points" +
             (ok ? ", verified" : ", NOT verified");
  for (const auto& line : w.witness.transcript) out.text += "\n  " + line;
  out.code = ok ? kOk : kDisagreement;
  return out;
}

// sylvester -------------------------------------------------------------------

Output cmd_sylvester(Context& ctx, const std::string& coeffs, bool decompose) {
  Output out;
  auto a = parse_coeffs(coeffs);
  const unsigned d = static_cast<unsigned>(a.size() - 1);
  const BinaryForm f(d, std::move(a));
  nlohmann::json av = nlohmann::json::array();
  for (const auto& x : f.a) av.push_back(x.get_str());
  const auto h = rank(hankel(f, d / 2));
  out.result = {{"degree", d}, {"a", av}, {"form", f.to_string()}, {"hankel_rank", h}};
  std::ostringstream text;
  text << "f = " << f.to_string() << "\nbalanced catalecticant rank " << h;
  if (d % 2 == 1) {
    const auto g = sylvester_g(f);
    out.result["g"] = g.to_string();
    text << "\ng = " << g.to_string();
    if (d == 5) out.result["gundelfinger"] = gundelfinger(f).to_string();
  }
  if (decompose) {
    if (d % 2 == 0) throw UsageError("--decompose needs an odd degree");
    const auto res = decompose_odd(f, ctx.cfg.tolerance);
    out.result["decomposition"] = res.to_json();
    if (res.decomposition) {
      for (const auto& t : res.decomposition->terms) {
        text << "\n  " << complex_text(t.c) << " * (" << complex_text(t.p) << "*x + " << complex_text(t.q) << "*y)^" << d;
      }
      text << "\nresidual " << res.decomposition->residual;
    } else {
      text << "\ndegenerate: " << res.message;
    }
  }
  out.text = text.str();
  return out;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact interpolation and secant-dimension toolkit for double points", "ahlab"};
  app.require_subcommand(1);
  app.fallthrough();

  Context ctx;
  RunConfig& cfg = ctx.cfg;
  app.add_option("--field", cfg.field, "prime or rationals")->check(CLI::IsMember({"prime", "rationals"}));
  app.add_option("--prime", cfg.prime, "prime modulus, below 2^32");
  app.add_flag("--allow-small-prime", cfg.allow_small_prime, "accept primes not exceeding the degree");
  app.add_option("--seed", cfg.seed, "base random seed");
  app.add_option("--trials", cfg.trials, "random trials per rank computation")->check(CLI::PositiveNumber);
  app.add_flag("--no-retry", cfg.no_retry, "skip the retry with a fresh seed and prime after a low rank");
  app.add_option("--tol", cfg.tolerance, "numerical tolerance for root separation");
  app.add_option("--cache-dir", cfg.cache_dir, "JSON-lines report cache (default: $AHLAB_CACHE_DIR)");
  app.add_option("--format", cfg.format, "json, csv or text")->check(CLI::IsMember({"json", "csv", "text"}));

  HilbertArgs ha;
  auto* hilbert = app.add_subcommand("hilbert", "Hilbert function of double points or of a scheme file");
  auto* h_n = hilbert->add_option("--n", ha.n, "projective dimension");
  hilbert->add_option("--d", ha.d, "degree")->required();
  auto* h_points = hilbert->add_option("--points", ha.points, "number of general double points");
  auto* h_scheme = hilbert->add_option("--scheme", ha.scheme, "scheme JSON file");
  h_points->excludes(h_scheme);

  SweepArgs sa;
  auto* sw = app.add_subcommand("sweep", "Hilbert function at k_minus and k_plus over a range of (n, d)");
  sw->add_option("--n-lo", sa.n_lo);
  sw->add_option("--n-hi", sa.n_hi);
  sw->add_option("--d-lo", sa.d_lo);
  sw->add_option("--d-hi", sa.d_hi);
  sw->add_option("--threads", sa.threads, "worker threads (0: hardware concurrency)");

  CaseArgs va;
  auto* verify = app.add_subcommand("verify-ah", "rank check plus checked certificate at the critical k");
  verify->add_option("--n", va.n)->required();
  verify->add_option("--d", va.d)->required();
  auto* v_k = verify->add_option("--k", va.k, "default: both k_minus and k_plus");

  CaseArgs ca;
  std::string cert_input;
  bool cert_check = false;
  auto* certificate = app.add_subcommand("certificate", "build, and optionally check, an induction certificate");
  auto* c_n = certificate->add_option("--n", ca.n);
  auto* c_d = certificate->add_option("--d", ca.d);
  auto* c_k = certificate->add_option("--k", ca.k);
  auto* c_in = certificate->add_option("--input", cert_input, "check a certificate JSON file");
  certificate->add_flag("--check", cert_check, "re-verify the built certificate");
  c_in->excludes(c_n)->excludes(c_d)->excludes(c_k);

  CaseArgs wa;
  long bound = 20;
  auto* witness = app.add_subcommand("witness", "exact witness form for an exceptional case");
  witness->add_option("--n", wa.n)->required();
  witness->add_option("--d", wa.d)->required();
  witness->add_option("--k", wa.k)->required();
  witness->add_option("--bound", bound, "coordinate bound for the random points")->check(CLI::PositiveNumber);

  std::string coeffs;
  bool decompose = false;
  auto* sylv = app.add_subcommand("sylvester", "catalecticant rank, covariant g and odd-degree decomposition");
  sylv->add_option("--coeffs", coeffs, "a_0,...,a_d of f = sum C(d,i) a_i x^(d-i) y^i")->required();
  sylv->add_flag("--decompose", decompose);

  std::vector<std::string> reversed(args.begin() + (args.empty() ? 0 : 1), args.end());
  std::reverse(reversed.begin(), reversed.end());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "ahlab: " << e.what() << "\n";
    return kUsage;
  }

  try {
    cfg.field_config().validate();
    if (const auto dir = ReportCache::resolve_dir(cfg.cache_dir)) ctx.cache = std::make_unique<ReportCache>(*dir);
    const auto start = std::chrono::steady_clock::now();
    Output res;
    std::string command;
    if (hilbert->parsed()) {
      command = "hilbert";
      res = cmd_hilbert(ctx, ha, h_n->count() > 0, h_points->count() > 0);
    } else if (sw->parsed()) {
      command = "sweep";
      res = cmd_sweep(ctx, sa);
    } else if (verify->parsed()) {
      command = "verify-ah";
      res = cmd_verify(ctx, va, v_k->count() > 0);
    } else if (certificate->parsed()) {
      command = "certificate";
      const bool have_case = c_n->count() && c_d->count() && c_k->count();
      res = cmd_certificate(ctx, ca, have_case, cert_input, cert_check);
    } else if (witness->parsed()) {
      command = "witness";
      res = cmd_witness(ctx, wa, bound);
    } else {
      command = "sylvester";
      res = cmd_sylvester(ctx, coeffs, decompose);
    }
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();

    if (cfg.format == "csv") {
      if (res.csv.empty()) throw UsageError("csv output is available for hilbert and sweep");
      out << res.csv;
    } else if (cfg.format == "text") {
      out << res.text << "\n";
    } else {
      strip_timing(res.result);
      nlohmann::json env = {{"command", command},
                            {"config", cfg.to_json()},
                            {"result", res.result},
                            {"cached", res.cached},
                            {"timing", {{"elapsed_ms", ms}}}};
      out << env.dump(2) << "\n";
    }
    return res.code;
  } catch (const UsageError& e) {
    err << "ahlab: " << e.what() << "\n";
    return kUsage;
  } catch (const FieldError& e) {
    err << "ahlab: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    err << "ahlab: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "ahlab: error: " << e.what() << "\n";
    return kUsage;
  }
}

}  // namespace ahlab::cli
