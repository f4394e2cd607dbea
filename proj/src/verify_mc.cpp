#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <thread>
#include <vector>

#include "nmlg/attenuation.hpp"
#include "nmlg/errors.hpp"
#include "nmlg/gauss.hpp"
#include "nmlg/rng.hpp"
#include "nmlg/specfun.hpp"
#include "nmlg/verify.hpp"

namespace nmlg {

namespace rng {

double Stream::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u1 = uniform_pos();
  double u2 = uniform();
  double r = std::sqrt(-2.0 * std::log(u1));
  double theta = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(theta);
  has_spare_ = true;
  return r * std::cos(theta);
}

}  // namespace rng

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr std::int64_t kChunk = 8192;

// ln of the surface area of the unit sphere in R^d.
double log_sphere_area(std::int64_t d) {
  double dd = static_cast<double>(d);
  return std::log(2.0) + 0.5 * dd * std::log(std::numbers::pi) - specfun::log_gamma(0.5 * dd);
}

// Proposal components per mean-region. Radii where the clipped variance is
// interior follow a log-uniform law to match the r^{-n} profile there; the
// clipped ends are matched by Gaussians at the corresponding sigma.
enum Kind { kInner = 0, kRadial = 1, kOuter = 2 };

struct Stratum {
  int region;  // 1: mean below the box, 2: inside, 3: above
  Kind kind;
  double weight;       // normalized mixture share
  std::int64_t count;  // allocated samples
};

struct McContext {
  std::int64_t n;
  GaussianClass cls;
  double a2;        // half box width
  double log_span;  // ln(sigma_max/sigma_min)
  double r_lo, r_hi;
  double log_area_full;  // dimension n
  double log_area_dev;   // dimension n-1
  std::vector<Stratum> strata;
};

// Log proposal density for side regions (1 and 3), a function of |v|^2 where
// v = (sqrt(n)(y -+ a2), C z) ranges over a half-space.
double log_g_side(const McContext& c, Kind kind, double r2) {
  double nd = static_cast<double>(c.n);
  if (kind == kRadial) {
    double r = std::sqrt(r2);
    if (r < c.r_lo || r > c.r_hi) return kNegInf;
    return std::log(2.0) - std::log(c.log_span) - c.log_area_full - nd * std::log(r);
  }
  double s = (kind == kInner) ? c.cls.sigma_min : c.cls.sigma_max;
  return std::log(2.0) - 0.5 * nd * std::log(2.0 * std::numbers::pi * s * s) - r2 / (2.0 * s * s);
}

// Log proposal density (in x-space) for the middle region: y uniform on the
// box, w = Cz from the given component; the (y, w) -> x volume factor is
// sqrt(n), absorbed here.
double log_g_mid(const McContext& c, Kind kind, double w2) {
  double md = static_cast<double>(c.n - 1);
  double base = -std::log(c.cls.alpha) - 0.5 * std::log(static_cast<double>(c.n));
  if (kind == kRadial) {
    double r = std::sqrt(w2);
    if (r < c.r_lo || r > c.r_hi) return kNegInf;
    return base - std::log(c.log_span) - c.log_area_dev - md * std::log(r);
  }
  double s = (kind == kInner) ? c.cls.sigma_min : c.cls.sigma_max;
  return base - 0.5 * md * std::log(2.0 * std::numbers::pi * s * s) - w2 / (2.0 * s * s);
}

// Log of the full mixture density at a point of the given region. Components
// of other regions have disjoint support and drop out.
double log_mixture(const McContext& c, int region, double sq_norm) {
  double terms[3];
  int cnt = 0;
  for (const Stratum& st : c.strata) {
    if (st.region != region) continue;
    double lg = (region == 2) ? log_g_mid(c, st.kind, sq_norm) : log_g_side(c, st.kind, sq_norm);
    terms[cnt++] = std::log(st.weight) + lg;
  }
  double m = kNegInf;
  for (int i = 0; i < cnt; i++) m = std::max(m, terms[i]);
  if (m == kNegInf) return kNegInf;
  double s = 0.0;
  for (int i = 0; i < cnt; i++) s += std::exp(terms[i] - m);
  return m + std::log(s);
}

struct Scratch {
  std::vector<double> w, z, x, v;
};

// Draws one point from the stratum and returns the importance ratio
// envelope(x) / mixture(x); the draw depends only on (seed, stratum, index).
double sample_ratio(const McContext& c, const Stratum& st, rng::Stream& rs, Scratch& sc) {
  std::int64_t n = c.n;
  std::int64_t m = n - 1;
  double log_g;
  double y;
  sc.w.resize(static_cast<std::size_t>(m));
  sc.z.resize(static_cast<std::size_t>(m));
  sc.x.resize(static_cast<std::size_t>(n));

  if (st.region == 2) {
    y = -c.a2 + c.cls.alpha * rs.uniform();
    double w2 = 0.0;
    if (st.kind == kRadial) {
      double norm2 = 0.0;
      for (std::int64_t j = 0; j < m; j++) {
        sc.w[j] = rs.normal();
        norm2 += sc.w[j] * sc.w[j];
      }
      double r = c.r_lo * std::exp(c.log_span * rs.uniform());
      if (norm2 == 0.0) {
        sc.w[0] = r;
        for (std::int64_t j = 1; j < m; j++) sc.w[j] = 0.0;
      } else {
        double scale = r / std::sqrt(norm2);
        for (std::int64_t j = 0; j < m; j++) sc.w[j] *= scale;
      }
      w2 = r * r;
    } else {
      double s = (st.kind == kInner) ? c.cls.sigma_min : c.cls.sigma_max;
      for (std::int64_t j = 0; j < m; j++) {
        sc.w[j] = s * rs.normal();
        w2 += sc.w[j] * sc.w[j];
      }
    }
    log_g = log_mixture(c, 2, w2);
  } else {
    double sign = (st.region == 1) ? -1.0 : 1.0;
    sc.v.resize(static_cast<std::size_t>(n));
    double r2 = 0.0;
    if (st.kind == kRadial) {
      double norm2 = 0.0;
      for (std::int64_t j = 0; j < n; j++) {
        sc.v[j] = rs.normal();
        norm2 += sc.v[j] * sc.v[j];
      }
      double r = c.r_lo * std::exp(c.log_span * rs.uniform());
      if (norm2 == 0.0) {
        sc.v[0] = r;
        for (std::int64_t j = 1; j < n; j++) sc.v[j] = 0.0;
      } else {
        double scale = r / std::sqrt(norm2);
        for (std::int64_t j = 0; j < n; j++) sc.v[j] *= scale;
      }
      r2 = r * r;
    } else {
      double s = (st.kind == kInner) ? c.cls.sigma_min : c.cls.sigma_max;
      for (std::int64_t j = 0; j < n; j++) {
        sc.v[j] = s * rs.normal();
        r2 += sc.v[j] * sc.v[j];
      }
    }
    sc.v[0] = sign * std::fabs(sc.v[0]);  // restrict to the region's half-space
    y = sign * c.a2 + sc.v[0] / std::sqrt(static_cast<double>(n));
    for (std::int64_t j = 0; j < m; j++) sc.w[j] = sc.v[j + 1];
    log_g = log_mixture(c, st.region, r2);
  }

  deviation::solve_upper(sc.w, sc.z);
  double zsum = 0.0;
  for (std::int64_t j = 0; j < m; j++) {
    sc.x[j] = y + sc.z[j];
    zsum += sc.z[j];
  }
  sc.x[m] = y - zsum;

  double log_phat = log_envelope_seq(SufficientStats::from_sequence(sc.x), c.cls);
  return std::exp(log_phat - log_g);
}

struct ChunkSums {
  double sum = 0.0;
  double sum_sq = 0.0;
};

struct Task {
  int stratum;
  std::int64_t begin, end;
};

// Runs fn over fixed-size index chunks; results are combined in task order, so
// the totals are independent of the number of worker threads.
template <typename Fn>
std::vector<ChunkSums> run_tasks(const std::vector<Task>& tasks, int threads, Fn fn) {
  std::vector<ChunkSums> results(tasks.size());
  if (threads <= 1 || tasks.size() <= 1) {
    for (std::size_t i = 0; i < tasks.size(); i++) results[i] = fn(tasks[i]);
    return results;
  }
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= tasks.size()) return;
      results[i] = fn(tasks[i]);
    }
  };
  std::vector<std::thread> pool;
  int nw = std::min<int>(threads, static_cast<int>(tasks.size()));
  pool.reserve(static_cast<std::size_t>(nw));
  for (int t = 0; t < nw; t++) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  return results;
}

std::vector<Task> make_tasks(const std::vector<Stratum>& strata) {
  std::vector<Task> tasks;
  for (std::size_t k = 0; k < strata.size(); k++) {
    for (std::int64_t b = 0; b < strata[k].count; b += kChunk)
      tasks.push_back(Task{static_cast<int>(k), b, std::min(b + kChunk, strata[k].count)});
  }
  return tasks;
}

// Largest-remainder allocation with a floor so every stratum can estimate its
// own variance.
void allocate_counts(std::vector<Stratum>& strata, std::int64_t samples) {
  std::size_t k = strata.size();
  std::vector<double> frac(k);
  std::int64_t assigned = 0;
  for (std::size_t i = 0; i < k; i++) {
    double ideal = strata[i].weight * static_cast<double>(samples);
    strata[i].count = static_cast<std::int64_t>(ideal);
    frac[i] = ideal - static_cast<double>(strata[i].count);
    assigned += strata[i].count;
  }
  while (assigned < samples) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < k; i++)
      if (frac[i] > frac[best]) best = i;
    strata[best].count++;
    frac[best] = -1.0;
    assigned++;
  }
  const std::int64_t floor = 256;
  for (std::size_t i = 0; i < k; i++) {
    while (strata[i].count < floor) {
      std::size_t big = 0;
      for (std::size_t j = 1; j < k; j++)
        if (strata[j].count > strata[big].count) big = j;
      if (big == i || strata[big].count <= floor) break;
      strata[big].count--;
      strata[i].count++;
    }
  }
}

}  // namespace

IntegralEstimate mc_atten(std::int64_t n, const GaussianClass& cls, std::int64_t samples,
                          std::uint64_t seed, int threads) {
  if (n < 2) throw std::domain_error("mc_atten: requires n >= 2");
  if (samples < 10000) throw std::domain_error("mc_atten: requires samples >= 10000");
  if (threads < 1) throw std::domain_error("mc_atten: requires threads >= 1");

  double nd = static_cast<double>(n);
  McContext c{n,
              cls,
              0.5 * cls.alpha,
              std::log(cls.sigma_max / cls.sigma_min),
              std::sqrt(nd) * cls.sigma_min,
              std::sqrt(nd) * cls.sigma_max,
              log_sphere_area(n),
              log_sphere_area(n - 1),
              {}};

  // Closed-form masses of the region decomposition drive the mixture shares;
  // they only steer allocation, the estimator stays unbiased regardless.
  AttenuationTerms t = atten_exact_terms(n, cls);
  double chi_n = specfun::regularized_gamma_p(0.5 * nd, 0.5 * nd);
  double mean_coef = cls.alpha * std::sqrt(nd / (2.0 * std::numbers::pi));
  double lambda[3][3] = {
      {0.5 * chi_n, 0.5 * t.var_term, 0.5 * (1.0 - chi_n)},
      {mean_coef * t.i_n / cls.sigma_min, t.joint_term,
       mean_coef * (1.0 - t.i_n) / cls.sigma_max},
      {0.5 * chi_n, 0.5 * t.var_term, 0.5 * (1.0 - chi_n)},
  };
  double total = 0.0;
  for (int r = 0; r < 3; r++)
    for (int q = 0; q < 3; q++) total += lambda[r][q];
  for (int r = 0; r < 3; r++)
    for (int q = 0; q < 3; q++)
      if (lambda[r][q] > 0.0)
        c.strata.push_back(Stratum{r + 1, static_cast<Kind>(q), lambda[r][q] / total, 0});
  allocate_counts(c.strata, samples);

  std::vector<Task> tasks = make_tasks(c.strata);
  auto results = run_tasks(tasks, threads, [&](const Task& task) {
    const Stratum& st = c.strata[static_cast<std::size_t>(task.stratum)];
    std::uint64_t stream_id = static_cast<std::uint64_t>(st.region * 4 + st.kind);
    Scratch sc;
    ChunkSums out;
    for (std::int64_t i = task.begin; i < task.end; i++) {
      rng::Stream rs(seed, stream_id, static_cast<std::uint64_t>(i));
      double h = sample_ratio(c, st, rs, sc);
      out.sum += h;
      out.sum_sq += h * h;
    }
    return out;
  });

  std::size_t nstrata = c.strata.size();
  std::vector<ChunkSums> per_stratum(nstrata);
  for (std::size_t i = 0; i < tasks.size(); i++) {
    per_stratum[static_cast<std::size_t>(tasks[i].stratum)].sum += results[i].sum;
    per_stratum[static_cast<std::size_t>(tasks[i].stratum)].sum_sq += results[i].sum_sq;
  }

  double value = 0.0;
  double variance = 0.0;
  double region_mass[4] = {0, 0, 0, 0};
  double region_var[4] = {0, 0, 0, 0};
  double ess_num = 0.0;
  double ess_den = 0.0;
  for (std::size_t k = 0; k < nstrata; k++) {
    const Stratum& st = c.strata[k];
    double nk = static_cast<double>(st.count);
    double mean = per_stratum[k].sum / nk;
    double var = 0.0;
    if (st.count > 1)
      var = std::max(0.0, (per_stratum[k].sum_sq - nk * mean * mean) / (nk - 1.0));
    value += st.weight * mean;
    variance += st.weight * st.weight * var / nk;
    region_mass[st.region] += st.weight * mean;
    region_var[st.region] += st.weight * st.weight * var / nk;
    ess_num += (st.weight / nk) * per_stratum[k].sum;
    ess_den += (st.weight / nk) * (st.weight / nk) * per_stratum[k].sum_sq;
  }
  double ess = (ess_den > 0.0) ? ess_num * ess_num / ess_den : 0.0;
  if (ess < 0.01 * static_cast<double>(samples))
    throw proposal_error("mc_atten: effective sample size below 1% of draws");

  IntegralEstimate est;
  est.value = value;
  est.std_error = std::sqrt(variance);
  est.samples = samples;
  est.seed = seed;
  est.regions = RegionMasses{region_mass[1], region_mass[2], region_mass[3]};
  est.region_std_errors = RegionMasses{std::sqrt(region_var[1]), std::sqrt(region_var[2]),
                                       std::sqrt(region_var[3])};
  return est;
}

IntegralEstimate mc_in(std::int64_t n, std::int64_t samples, std::uint64_t seed, int threads) {
  if (n < 2) throw std::domain_error("mc_in: requires n >= 2");
  if (samples < 10000) throw std::domain_error("mc_in: requires samples >= 10000");
  if (threads < 1) throw std::domain_error("mc_in: requires threads >= 1");

  std::size_t m = static_cast<std::size_t>(n - 1);
  double bound = static_cast<double>(n);
  std::vector<Task> tasks;
  for (std::int64_t b = 0; b < samples; b += kChunk)
    tasks.push_back(Task{0, b, std::min(b + kChunk, samples)});

  auto results = run_tasks(tasks, threads, [&](const Task& task) {
    std::vector<double> w(m);
    std::vector<double> z(m);
    ChunkSums out;
    for (std::int64_t i = task.begin; i < task.end; i++) {
      rng::Stream rs(seed, 1, static_cast<std::uint64_t>(i));
      for (std::size_t j = 0; j < m; j++) w[j] = rs.normal();
      deviation::solve_upper(w, z);
      if (deviation::quadratic_form(z) <= bound) out.sum += 1.0;
    }
    return out;
  });

  double hits = 0.0;
  for (const ChunkSums& r : results) hits += r.sum;
  double p = hits / static_cast<double>(samples);
  double se = std::sqrt(p * (1.0 - p) / static_cast<double>(samples));
  IntegralEstimate est;
  est.value = p;
  est.std_error = se;
  est.samples = samples;
  est.seed = seed;
  return est;
}

}  // namespace nmlg
