#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "nmlg/attenuation.hpp"
#include "nmlg/checks.hpp"
#include "nmlg/errors.hpp"
#include "nmlg/gauss.hpp"
#include "nmlg/universal.hpp"
#include "nmlg/verify.hpp"

namespace {

constexpr std::uint64_t kDefaultSeed = 12648430;

// ---------------------------------------------------------------------------
// Minimal JSON emitter. Insertion order is preserved and doubles are printed
// with 17 significant digits, so identical runs produce identical bytes.

std::string fmt_double(double v, int digits) {
  if (std::isnan(v)) return "null";
  if (std::isinf(v)) return v > 0 ? "\"inf\"" : "\"-inf\"";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

std::string json_escape(const std::string& s) {
  std::string out = "\"";
  for (char ch : s) {
    switch (ch) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(ch) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", ch);
          out += buf;
        } else {
          out += ch;
        }
    }
  }
  out += "\"";
  return out;
}

class Json {
 public:
  static Json object() { return Json(Kind::object); }
  static Json array() { return Json(Kind::array); }
  static Json number(double v) { return Json(Kind::number, fmt_double(v, 17)); }
  static Json integer(std::int64_t v) { return Json(Kind::number, std::to_string(v)); }
  static Json uinteger(std::uint64_t v) { return Json(Kind::number, std::to_string(v)); }
  static Json string(const std::string& s) { return Json(Kind::number, json_escape(s)); }
  static Json boolean(bool b) { return Json(Kind::number, b ? "true" : "false"); }
  static Json null() { return Json(Kind::number, "null"); }

  Json& add(const std::string& key, Json v) {
    items_.emplace_back(key, std::move(v));
    return *this;
  }
  Json& push(Json v) {
    items_.emplace_back("", std::move(v));
    return *this;
  }

  std::string dump() const {
    if (kind_ == Kind::number) return scalar_;
    std::string out(kind_ == Kind::object ? "{" : "[");
    for (std::size_t i = 0; i < items_.size(); i++) {
      if (i) out += ",";
      if (kind_ == Kind::object) out += json_escape(items_[i].first) + ":";
      out += items_[i].second.dump();
    }
    out += (kind_ == Kind::object ? "}" : "]");
    return out;
  }

 private:
  enum class Kind { object, array, number };
  explicit Json(Kind k, std::string s = "") : kind_(k), scalar_(std::move(s)) {}
  Kind kind_;
  std::string scalar_;
  std::vector<std::pair<std::string, Json>> items_;
};

Json opt_number(std::optional<double> v) { return v ? Json::number(*v) : Json::null(); }

// ---------------------------------------------------------------------------

struct ClassFlags {
  double alpha = 0.0;
  double sigma_min = 1.0;
  double sigma_max = 1.0;

  void attach(CLI::App* cmd) {
    cmd->add_option("--alpha", alpha, "width of the mean interval [-alpha/2, alpha/2]")
        ->required();
    cmd->add_option("--sigma-min", sigma_min, "lower std deviation bound")->required();
    cmd->add_option("--sigma-max", sigma_max, "upper std deviation bound")->required();
  }
  nmlg::GaussianClass make() const { return nmlg::GaussianClass(alpha, sigma_min, sigma_max); }
  void echo(Json& config) const {
    config.add("alpha", Json::number(alpha));
    config.add("sigma_min", Json::number(sigma_min));
    config.add("sigma_max", Json::number(sigma_max));
  }
};

std::uint64_t resolve_seed(bool flag_given, std::uint64_t flag_value) {
  if (flag_given) return flag_value;
  if (const char* env = std::getenv("NMLG_SEED")) {
    char* end = nullptr;
    errno = 0;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (errno != 0 || end == env || *end != '\0')
      throw std::domain_error("NMLG_SEED is not a valid unsigned integer");
    return static_cast<std::uint64_t>(v);
  }
  return kDefaultSeed;
}

std::vector<double> read_sequence(const std::string& path) {
  std::istream* in = &std::cin;
  std::ifstream file;
  if (path != "-") {
    file.open(path);
    if (!file) throw std::domain_error("cannot open input file: " + path);
    in = &file;
  }
  std::vector<double> xs;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(*in, line)) {
    lineno++;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    auto e = line.find_last_not_of(" \t\r");
    std::string token = line.substr(b, e - b + 1);
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(token, &used);
    } catch (const std::exception&) {
      throw std::domain_error("line " + std::to_string(lineno) + ": not a number: " + token);
    }
    if (used != token.size())
      throw std::domain_error("line " + std::to_string(lineno) + ": trailing characters: " + token);
    xs.push_back(v);
  }
  if (xs.empty()) throw std::domain_error("input sequence is empty");
  return xs;
}

void emit(const Json& doc) { std::cout << doc.dump() << "\n"; }

void human_line(const char* key, const std::string& value) {
  std::printf("%-18s %s\n", key, value.c_str());
}

std::string h6(double v) {
  std::string s = fmt_double(v, 6);
  if (s.front() == '"') s = s.substr(1, s.size() - 2);  // bare inf in human mode
  return s;
}

// ---------------------------------------------------------------------------

struct AttenArgs {
  std::int64_t n = 1;
  ClassFlags cls;
  std::string method = "exact";
  std::int64_t samples = 200000;
  std::uint64_t seed = 0;
  bool seed_given = false;
  int threads = 1;
  double rel_tol = 1e-6;
  std::string format = "json";
};

int cmd_atten(const AttenArgs& a) {
  nmlg::GaussianClass cls = a.cls.make();
  if (a.n < 1) throw std::domain_error("atten: requires --n >= 1");

  nmlg::AttenuationResult res{0, 0, nmlg::Method::exact, std::nullopt, std::nullopt};
  std::optional<double> error_estimate;
  std::optional<std::uint64_t> used_seed;
  std::optional<std::int64_t> used_samples;
  std::optional<double> used_tol;

  if (a.method == "exact") {
    res = nmlg::atten_exact(a.n, cls);
  } else if (a.method == "approx") {
    res = nmlg::atten_approx(a.n, cls);
  } else if (a.method == "quadrature") {
    if (a.n > 2) throw std::domain_error("atten: quadrature supports n = 1 or 2 only");
    nmlg::IntegralEstimate est = (a.n == 1) ? nmlg::quadrature_atten_1d(cls, a.rel_tol)
                                            : nmlg::quadrature_atten_2d(cls, a.rel_tol);
    res = nmlg::AttenuationResult{std::log(est.value), est.value, nmlg::Method::quadrature,
                                  est.regions, std::nullopt};
    error_estimate = est.error_estimate;
    used_tol = a.rel_tol;
  } else if (a.method == "mc") {
    std::uint64_t seed = resolve_seed(a.seed_given, a.seed);
    nmlg::IntegralEstimate est = nmlg::mc_atten(a.n, cls, a.samples, seed, a.threads);
    res = nmlg::AttenuationResult{std::log(est.value), est.value, nmlg::Method::monte_carlo,
                                  est.regions, est.std_error};
    used_seed = seed;
    used_samples = a.samples;
  } else {
    throw std::domain_error("atten: unknown method '" + a.method + "'");
  }

  if (a.format == "human") {
    human_line("attenuation", h6(res.value));
    human_line("log_attenuation", h6(res.log_value));
    human_line("method", std::string(nmlg::method_name(res.method)));
    if (res.std_error) human_line("std_error", h6(*res.std_error));
    if (error_estimate) human_line("error_estimate", h6(*error_estimate));
    if (res.regions) {
      human_line("region_below", h6(res.regions->r1));
      human_line("region_inside", h6(res.regions->r2));
      human_line("region_above", h6(res.regions->r3));
    }
    return 0;
  }
  if (a.format != "json") throw std::domain_error("atten: format must be json or human");

  Json config = Json::object();
  config.add("command", Json::string("atten"));
  config.add("n", Json::integer(a.n));
  a.cls.echo(config);
  config.add("method", Json::string(a.method));
  config.add("samples", used_samples ? Json::integer(*used_samples) : Json::null());
  config.add("seed", used_seed ? Json::uinteger(*used_seed) : Json::null());
  config.add("threads", Json::integer(a.threads));
  config.add("rel_tol", opt_number(used_tol));
  config.add("format", Json::string(a.format));

  Json result = Json::object();
  result.add("attenuation", Json::number(res.value));
  result.add("log_attenuation", Json::number(res.log_value));
  result.add("method", Json::string(std::string(nmlg::method_name(res.method))));
  result.add("std_error", opt_number(res.std_error));
  if (res.regions) {
    Json regions = Json::object();
    regions.add("r1", Json::number(res.regions->r1));
    regions.add("r2", Json::number(res.regions->r2));
    regions.add("r3", Json::number(res.regions->r3));
    result.add("regions", std::move(regions));
  } else {
    result.add("regions", Json::null());
  }
  result.add("error_estimate", opt_number(error_estimate));

  Json doc = Json::object();
  doc.add("config", std::move(config));
  doc.add("result", std::move(result));
  doc.add("checks", Json::null());
  emit(doc);
  return 0;
}

// ---------------------------------------------------------------------------

struct ScanArgs {
  std::int64_t n_min = 1;
  std::int64_t n_max = 1;
  std::int64_t n_step = 1;
  std::int64_t n_mult = 0;  // 0 = additive stepping
  ClassFlags cls;
  std::string format = "csv";
};

int cmd_scan(const ScanArgs& a) {
  nmlg::GaussianClass cls = a.cls.make();
  if (a.n_min < 1 || a.n_max < a.n_min) throw std::domain_error("scan: bad n range");
  if (a.n_mult == 0 && a.n_step < 1) throw std::domain_error("scan: requires --n-step >= 1");
  if (a.n_mult == 1 || a.n_mult < 0) throw std::domain_error("scan: requires --n-mult >= 2");
  if (a.format != "csv" && a.format != "human")
    throw std::domain_error("scan: format must be csv or human");

  if (a.format == "csv")
    std::printf("n,alpha,sigma_min,sigma_max,exact,log_exact,approx,joint_term,mean_term,var_term,i_n\n");
  else
    std::printf("%8s %14s %14s %14s %14s %14s %14s\n", "n", "exact", "approx", "joint", "mean",
                "var", "i_n");

  for (std::int64_t n = a.n_min; n <= a.n_max;
       n = (a.n_mult != 0) ? n * a.n_mult : n + a.n_step) {
    nmlg::AttenuationResult ex = nmlg::atten_exact(n, cls);
    nmlg::AttenuationTerms t = nmlg::atten_exact_terms(n, cls);
    double approx = std::numeric_limits<double>::quiet_NaN();
    if (n >= 2) approx = nmlg::atten_approx(n, cls).value;
    if (a.format == "csv") {
      std::printf("%lld,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n",
                  static_cast<long long>(n), cls.alpha, cls.sigma_min, cls.sigma_max, ex.value,
                  ex.log_value, approx, t.joint_term, t.mean_term, t.var_term, t.i_n);
    } else {
      std::printf("%8lld %14.6g %14.6g %14.6g %14.6g %14.6g %14.6g\n",
                  static_cast<long long>(n), ex.value, approx, t.joint_term, t.mean_term,
                  t.var_term, t.i_n);
    }
  }
  return 0;
}

// ---------------------------------------------------------------------------

struct VerifyArgs {
  std::string only;
  std::int64_t n = 0;
  bool n_given = false;
  std::int64_t samples = 200000;
  std::uint64_t seed = 0;
  bool seed_given = false;
  int threads = 1;
  double max_se = 0.005;
  std::string format = "json";
};

int cmd_verify(const VerifyArgs& a) {
  nmlg::VerifyOptions opt;
  opt.only = a.only;
  if (a.n_given) opt.n_override = a.n;
  opt.samples = a.samples;
  opt.seed = resolve_seed(a.seed_given, a.seed);
  opt.threads = a.threads;
  opt.max_se = a.max_se;

  std::vector<nmlg::CheckResult> checks = nmlg::run_checks(opt);
  int failed = 0;
  for (const auto& c : checks)
    if (!c.pass) failed++;

  if (a.format == "human") {
    for (const auto& c : checks) {
      std::printf("[%s] %-24s value=%s expected=%s err=%s tol=%s\n", c.pass ? "PASS" : "FAIL",
                  c.name.c_str(), h6(c.value).c_str(), h6(c.expected).c_str(),
                  h6(c.error).c_str(), h6(c.tolerance).c_str());
      for (const auto& [k, v] : c.extras) std::printf("       %s = %s\n", k.c_str(), h6(v).c_str());
    }
    std::printf("%d/%zu checks passed\n", static_cast<int>(checks.size()) - failed,
                checks.size());
    return failed == 0 ? 0 : 3;
  }
  if (a.format != "json") throw std::domain_error("verify: format must be json or human");

  Json config = Json::object();
  config.add("command", Json::string("verify"));
  config.add("only", a.only.empty() ? Json::null() : Json::string(a.only));
  config.add("n", a.n_given ? Json::integer(a.n) : Json::null());
  config.add("samples", Json::integer(a.samples));
  config.add("seed", Json::uinteger(opt.seed));
  config.add("threads", Json::integer(a.threads));
  config.add("max_se", Json::number(a.max_se));
  config.add("format", Json::string(a.format));

  Json result = Json::object();
  result.add("checks_run", Json::integer(static_cast<std::int64_t>(checks.size())));
  result.add("checks_failed", Json::integer(failed));
  result.add("pass", Json::boolean(failed == 0));

  Json arr = Json::array();
  for (const auto& c : checks) {
    Json jc = Json::object();
    jc.add("name", Json::string(c.name));
    jc.add("pass", Json::boolean(c.pass));
    jc.add("value", Json::number(c.value));
    jc.add("expected", Json::number(c.expected));
    jc.add("error", Json::number(c.error));
    jc.add("tolerance", Json::number(c.tolerance));
    jc.add("std_error", opt_number(c.std_error));
    jc.add("detail", Json::string(c.detail));
    if (!c.extras.empty()) {
      Json ex = Json::object();
      for (const auto& [k, v] : c.extras) ex.add(k, Json::number(v));
      jc.add("extras", std::move(ex));
    }
    arr.push(std::move(jc));
  }

  Json doc = Json::object();
  doc.add("config", std::move(config));
  doc.add("result", std::move(result));
  doc.add("checks", std::move(arr));
  emit(doc);
  return failed == 0 ? 0 : 3;
}

// ---------------------------------------------------------------------------

struct SeqArgs {
  ClassFlags cls;
  std::string input = "-";
  std::string format = "json";
};

int cmd_mle(const SeqArgs& a) {
  nmlg::GaussianClass cls = a.cls.make();
  std::vector<double> xs = read_sequence(a.input);
  nmlg::SufficientStats stats = nmlg::SufficientStats::from_sequence(xs);
  nmlg::MlEstimate ml = nmlg::ml_estimate(stats, cls);

  if (a.format == "human") {
    human_line("n", std::to_string(stats.n));
    human_line("mean", h6(stats.mean));
    human_line("sse", h6(stats.sse));
    human_line("mu_hat", h6(ml.mu_hat));
    human_line("sigma_hat_sq", h6(ml.sigma_hat_sq));
    human_line("log_max_density", h6(ml.log_phat));
    return 0;
  }
  if (a.format != "json") throw std::domain_error("mle: format must be json or human");

  Json config = Json::object();
  config.add("command", Json::string("mle"));
  a.cls.echo(config);
  config.add("input", Json::string(a.input));
  config.add("format", Json::string(a.format));

  Json result = Json::object();
  result.add("n", Json::integer(stats.n));
  result.add("mean", Json::number(stats.mean));
  result.add("sse", Json::number(stats.sse));
  result.add("mu_hat", Json::number(ml.mu_hat));
  result.add("sigma_hat_sq", Json::number(ml.sigma_hat_sq));
  result.add("log_max_density", Json::number(ml.log_phat));

  Json doc = Json::object();
  doc.add("config", std::move(config));
  doc.add("result", std::move(result));
  doc.add("checks", Json::null());
  emit(doc);
  return 0;
}

int cmd_logq(const SeqArgs& a) {
  nmlg::GaussianClass cls = a.cls.make();
  std::vector<double> xs = read_sequence(a.input);
  nmlg::SufficientStats stats = nmlg::SufficientStats::from_sequence(xs);
  nmlg::UniversalDensity u(cls, stats.n);
  double lq = nmlg::log_q_star(u, stats);
  double lp = nmlg::log_envelope_seq(stats, cls);
  double bits = nmlg::codelength_bits(u, stats);

  if (a.format == "human") {
    human_line("n", std::to_string(stats.n));
    human_line("log_envelope", h6(lp));
    human_line("log_attenuation", h6(u.log_atten));
    human_line("log_q_star", h6(lq));
    human_line("codelength_bits", h6(bits));
    return 0;
  }
  if (a.format != "json") throw std::domain_error("logq: format must be json or human");

  Json config = Json::object();
  config.add("command", Json::string("logq"));
  a.cls.echo(config);
  config.add("input", Json::string(a.input));
  config.add("format", Json::string(a.format));

  Json result = Json::object();
  result.add("n", Json::integer(stats.n));
  result.add("log_envelope", Json::number(lp));
  result.add("log_attenuation", Json::number(u.log_atten));
  result.add("log_q_star", Json::number(lq));
  result.add("codelength_bits", Json::number(bits));

  Json doc = Json::object();
  doc.add("config", std::move(config));
  doc.add("result", std::move(result));
  doc.add("checks", Json::null());
  emit(doc);
  return 0;
}

// ---------------------------------------------------------------------------

struct EnvelopeArgs {
  ClassFlags cls;
  double x_min = 0.0;
  double x_max = 0.0;
  bool range_given = false;
  std::int64_t points = 201;
  std::string format = "csv";
};

int cmd_envelope(const EnvelopeArgs& a) {
  nmlg::GaussianClass cls = a.cls.make();
  if (a.points < 2) throw std::domain_error("envelope: requires --points >= 2");
  double lo = a.x_min;
  double hi = a.x_max;
  if (!a.range_given) {
    hi = 0.5 * cls.alpha + 4.0 * cls.sigma_max;
    lo = -hi;
  }
  if (!(lo < hi)) throw std::domain_error("envelope: requires x_min < x_max");
  if (a.format != "csv" && a.format != "human")
    throw std::domain_error("envelope: format must be csv or human");

  if (a.format == "csv") std::printf("x,envelope,log_envelope\n");
  for (std::int64_t i = 0; i < a.points; i++) {
    double x = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(a.points - 1);
    double e = nmlg::envelope_1d(x, cls);
    if (a.format == "csv")
      std::printf("%.17g,%.17g,%.17g\n", x, e, std::log(e));
    else
      std::printf("%14.6g %14.6g %14.6g\n", x, e, std::log(e));
  }
  return 0;
}

struct InArgs {
  std::int64_t n = 1;
  std::string format = "json";
};

int cmd_in(const InArgs& a) {
  double v = nmlg::compute_in(a.n);
  if (a.format == "human") {
    human_line("n", std::to_string(a.n));
    human_line("i_n", h6(v));
    return 0;
  }
  if (a.format != "json") throw std::domain_error("in: format must be json or human");
  Json config = Json::object();
  config.add("command", Json::string("in"));
  config.add("n", Json::integer(a.n));
  config.add("format", Json::string(a.format));
  Json result = Json::object();
  result.add("i_n", Json::number(v));
  Json doc = Json::object();
  doc.add("config", std::move(config));
  doc.add("result", std::move(result));
  doc.add("checks", Json::null());
  emit(doc);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"universal-coding attenuation for Gaussian classes with bounded mean and variance"};
  app.require_subcommand(1);

  AttenArgs atten_args;
  CLI::App* atten = app.add_subcommand("atten", "compute the attenuation of a class");
  atten->add_option("--n", atten_args.n, "sequence length")->required();
  atten_args.cls.attach(atten);
  atten->add_option("--method", atten_args.method, "exact | approx | quadrature | mc");
  atten->add_option("--samples", atten_args.samples, "Monte Carlo sample count");
  CLI::Option* atten_seed = atten->add_option("--seed", atten_args.seed, "Monte Carlo seed");
  atten->add_option("--threads", atten_args.threads, "worker threads (result-invariant)");
  atten->add_option("--rel-tol", atten_args.rel_tol, "quadrature relative tolerance");
  atten->add_option("--format", atten_args.format, "json | human");

  ScanArgs scan_args;
  CLI::App* scan = app.add_subcommand("scan", "tabulate attenuation growth over n");
  scan->add_option("--n-min", scan_args.n_min, "first sequence length");
  scan->add_option("--n-max", scan_args.n_max, "last sequence length")->required();
  scan->add_option("--n-step", scan_args.n_step, "additive step");
  scan->add_option("--n-mult", scan_args.n_mult, "multiplicative step (overrides --n-step)");
  scan_args.cls.attach(scan);
  scan->add_option("--format", scan_args.format, "csv | human");

  VerifyArgs verify_args;
  CLI::App* verify = app.add_subcommand("verify", "cross-check closed forms against oracles");
  verify->add_option("--only", verify_args.only,
                     "run one group: atten1d | atten2d | mc | in | props | regions");
  CLI::Option* verify_n =
      verify->add_option("--n", verify_args.n, "dimension for the I_n limit experiment");
  verify->add_option("--samples", verify_args.samples, "Monte Carlo sample count");
  CLI::Option* verify_seed = verify->add_option("--seed", verify_args.seed, "Monte Carlo seed");
  verify->add_option("--threads", verify_args.threads, "worker threads (result-invariant)");
  verify->add_option("--max-se", verify_args.max_se, "std-error budget for the limit experiment");
  verify->add_option("--format", verify_args.format, "json | human");

  SeqArgs mle_args;
  CLI::App* mle = app.add_subcommand("mle", "clipped maximum likelihood for a sequence");
  mle_args.cls.attach(mle);
  mle->add_option("--input", mle_args.input, "sequence file, one value per line ('-' = stdin)");
  mle->add_option("--format", mle_args.format, "json | human");

  SeqArgs logq_args;
  CLI::App* logq = app.add_subcommand("logq", "universal density and code length for a sequence");
  logq_args.cls.attach(logq);
  logq->add_option("--input", logq_args.input, "sequence file, one value per line ('-' = stdin)");
  logq->add_option("--format", logq_args.format, "json | human");

  EnvelopeArgs env_args;
  CLI::App* envelope = app.add_subcommand("envelope", "tabulate the pointwise envelope");
  env_args.cls.attach(envelope);
  CLI::Option* env_min = envelope->add_option("--x-min", env_args.x_min, "grid start");
  CLI::Option* env_max = envelope->add_option("--x-max", env_args.x_max, "grid end");
  envelope->add_option("--points", env_args.points, "grid size");
  envelope->add_option("--format", env_args.format, "csv | human");

  InArgs in_args;
  CLI::App* in_cmd = app.add_subcommand("in", "closed-form deviation ellipsoid mass I_n");
  in_cmd->add_option("--n", in_args.n, "dimension")->required();
  in_cmd->add_option("--format", in_args.format, "json | human");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  atten_args.seed_given = atten_seed->count() > 0;
  verify_args.seed_given = verify_seed->count() > 0;
  verify_args.n_given = verify_n->count() > 0;
  env_args.range_given = env_min->count() > 0 || env_max->count() > 0;
  if (env_min->count() > 0 && env_max->count() == 0)
    env_args.x_max = -env_args.x_min;
  if (env_max->count() > 0 && env_min->count() == 0)
    env_args.x_min = -env_args.x_max;

  try {
    if (atten->parsed()) return cmd_atten(atten_args);
    if (scan->parsed()) return cmd_scan(scan_args);
    if (verify->parsed()) return cmd_verify(verify_args);
    if (mle->parsed()) return cmd_mle(mle_args);
    if (logq->parsed()) return cmd_logq(logq_args);
    if (envelope->parsed()) return cmd_envelope(env_args);
    if (in_cmd->parsed()) return cmd_in(in_args);
  } catch (const nmlg::convergence_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const nmlg::proposal_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
