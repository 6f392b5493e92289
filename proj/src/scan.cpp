#include "olx/scan.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include "olx/errors.hpp"
#include "olx/evaluate.hpp"
#include "olx/parallel.hpp"
#include "olx/primes.hpp"
#include "olx/resonator.hpp"

namespace olx {

namespace {

constexpr std::size_t kScanChunk = 2048;
constexpr std::size_t kLanes = 8;
constexpr std::size_t kCandidateMargin = 16;

struct Candidate {
  double t;
  double score;  // screened magnitude (or a monotone function of it)
};

bool better(const Candidate& a, const Candidate& b) {
  if (a.score != b.score) return a.score > b.score;
  return a.t < b.t;
}

bool better_record(const ScanRecord& a, const ScanRecord& b) {
  if (a.magnitude != b.magnitude) return a.magnitude > b.magnitude;
  return a.t < b.t;
}

void keep_best(std::vector<Candidate>& v, std::size_t count) {
  if (v.size() <= count) {
    std::sort(v.begin(), v.end(), better);
    return;
  }
  std::partial_sort(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(count), v.end(), better);
  v.resize(count);
}

/// |prod_j (1 - alpha_j e^{-i theta}/p)|^2 as a polynomial in cos(theta), one
/// row per prime, padded to a multiple of kLanes with unit factors.
struct ScreenTable {
  int degree = 1;
  std::size_t size = 0;  // padded
  std::vector<long double> log_p;
  std::vector<double> rot_cos;
  std::vector<double> rot_sin;
  std::vector<double> coef;  // coef[d * size + i]
};

std::vector<double> cosine_polynomial(std::span<const std::complex<double>> roots, double p) {
  // b_n: coefficients of prod_j (1 - alpha_j z); real for the shipped families.
  std::vector<double> b{1.0};
  for (const auto& alpha : roots) {
    std::vector<double> next(b.size() + 1, 0.0);
    for (std::size_t n = 0; n < b.size(); ++n) {
      next[n] += b[n];
      next[n + 1] -= alpha.real() * b[n];
    }
    b = std::move(next);
  }
  const std::size_t k = roots.size();
  // |P|^2 = C_0 + 2 sum_d C_d cos(d theta), C_d = sum_n b_n b_{n+d} p^{-2n-d}.
  std::vector<double> C(k + 1, 0.0);
  for (std::size_t d = 0; d <= k; ++d) {
    for (std::size_t n = 0; n + d <= k; ++n) C[d] += b[n] * b[n + d] * std::pow(p, -2.0 * n - d);
  }
  // Chebyshev T_d as power series in c.
  std::vector<double> out(k + 1, 0.0);
  std::vector<double> prev(k + 1, 0.0), cur(k + 1, 0.0);
  prev[0] = 1.0;
  out[0] += C[0];
  if (k >= 1) {
    cur[1] = 1.0;
    out[1] += 2.0 * C[1];
  }
  for (std::size_t d = 2; d <= k; ++d) {
    std::vector<double> next(k + 1, 0.0);
    for (std::size_t e = 0; e < k; ++e) next[e + 1] += 2.0 * cur[e];
    for (std::size_t e = 0; e <= k; ++e) next[e] -= prev[e];
    for (std::size_t e = 0; e <= k; ++e) out[e] += 2.0 * C[d] * next[e];
    prev = std::move(cur);
    cur = std::move(next);
  }
  return out;
}

ScreenTable screen_table(const LFunctionModel& model, double Y, double step) {
  ScreenTable table;
  // zeta^m is screened through zeta: the ordering is the same.
  const bool zeta_power = model.kind() == ModelKind::ZetaPower;
  table.degree = zeta_power ? 1 : model.degree();
  const auto primes = shared_primes(static_cast<std::uint64_t>(Y))->up_to(Y);
  table.size = (primes.size() + kLanes - 1) / kLanes * kLanes;
  table.log_p.assign(table.size, 0.0L);
  table.rot_cos.assign(table.size, 1.0);
  table.rot_sin.assign(table.size, 0.0);
  table.coef.assign(static_cast<std::size_t>(table.degree + 1) * table.size, 0.0);
  for (std::size_t i = table.size; i-- > primes.size();) table.coef[i] = 1.0;

  std::vector<std::complex<double>> roots(static_cast<std::size_t>(model.degree()));
  for (std::size_t i = 0; i < primes.size(); ++i) {
    const std::uint32_t p = primes[i];
    table.log_p[i] = std::log(static_cast<long double>(p));
    constexpr long double two_pi = 2.0L * std::numbers::pi_v<long double>;
    const double delta = static_cast<double>(std::fmod(static_cast<long double>(step) * table.log_p[i], two_pi));
    table.rot_cos[i] = std::cos(delta);
    table.rot_sin[i] = std::sin(delta);
    std::vector<double> poly;
    if (zeta_power) {
      const std::complex<double> one[1] = {1.0};
      poly = cosine_polynomial(one, p);
    } else {
      model.roots_into(p, roots);
      poly = cosine_polynomial(roots, p);
    }
    for (int d = 0; d <= table.degree; ++d) table.coef[static_cast<std::size_t>(d) * table.size + i] = poly[d];
  }
  return table;
}

/// Screened 1/sqrt(prod |P_p|^2) at count points spaced by the table's step, from t0.
template <int Deg>
[[gnu::always_inline]] inline void screen_chunk(const ScreenTable& table, double t0, std::size_t count, std::vector<double>& out,
                  std::vector<double>& c, std::vector<double>& s) {
  const std::size_t n = table.size;
  constexpr long double two_pi = 2.0L * std::numbers::pi_v<long double>;
  for (std::size_t i = 0; i < n; ++i) {
    const double angle = static_cast<double>(std::fmod(static_cast<long double>(t0) * table.log_p[i], two_pi));
    c[i] = std::cos(angle);
    s[i] = std::sin(angle);
  }
  const double* __restrict rc = table.rot_cos.data();
  const double* __restrict rs = table.rot_sin.data();
  const double* __restrict coef = table.coef.data();
  double* __restrict cp = c.data();
  double* __restrict sp = s.data();
  for (std::size_t j = 0; j < count; ++j) {
    std::array<double, kLanes> acc;
    acc.fill(1.0);
    for (std::size_t i = 0; i < n; i += kLanes) {
      for (std::size_t l = 0; l < kLanes; ++l) {
        const std::size_t k = i + l;
        const double ci = cp[k];
        const double si = sp[k];
        double f = coef[Deg * n + k];
        for (int d = Deg - 1; d >= 0; --d) f = f * ci + coef[d * n + k];
        acc[l] *= f;
        cp[k] = ci * rc[k] - si * rs[k];
        sp[k] = si * rc[k] + ci * rs[k];
      }
    }
    double prod = 1.0;
    for (double a : acc) prod *= a;
    out[j] = 1.0 / std::sqrt(prod);
  }
}

#define OLX_SCREEN_KERNEL(Deg)                                                                         \
  [[gnu::target_clones("avx2", "default")]] void screen_kernel_##Deg(                           \
      const ScreenTable& table, double t0, std::size_t count, std::vector<double>& out,            \
      std::vector<double>& c, std::vector<double>& s) {                                            \
    screen_chunk<Deg>(table, t0, count, out, c, s);                                                \
  }
OLX_SCREEN_KERNEL(1)
OLX_SCREEN_KERNEL(2)
OLX_SCREEN_KERNEL(4)
#undef OLX_SCREEN_KERNEL

void screen_dispatch(const ScreenTable& table, double t0, std::size_t count, std::vector<double>& out,
                     std::vector<double>& c, std::vector<double>& s) {
  switch (table.degree) {
    case 1: return screen_kernel_1(table, t0, count, out, c, s);
    case 2: return screen_kernel_2(table, t0, count, out, c, s);
    case 4: return screen_kernel_4(table, t0, count, out, c, s);
    default: throw DomainError("no screening kernel for degree " + std::to_string(table.degree));
  }
}

ScanRecord exact_record(const LFunctionModel& model, double t, double Y, bool refined) {
  const std::complex<double> value = euler_product_on_line(model, t, Y);
  const double magnitude = std::abs(value);
  if (!std::isfinite(magnitude) || !(magnitude > 0.0)) {
    throw NumericError("non-finite or zero |F(1+it; Y)| at t = " + std::to_string(t));
  }
  return {t, magnitude, std::arg(value), Y, refined};
}

}  // namespace

std::vector<ScanRecord> grid_scan(const LFunctionModel& model, double t_min, double t_max, double step, double Y,
                                  std::size_t top_k) {
  if (!std::isfinite(t_min) || !std::isfinite(t_max) || !(t_min <= t_max)) {
    throw DomainError("scan requires finite t_min <= t_max");
  }
  if (!(step > 0.0) || !std::isfinite(step)) throw DomainError("scan step must be positive");
  if (t_max > t_min && step > t_max - t_min) throw DomainError("scan step exceeds the interval length");
  if (top_k == 0) throw DomainError("top_k must be at least 1");
  if (std::max(std::abs(t_min), std::abs(t_max)) > kScanMaxT) {
    throw ResourceError("scan t beyond 1e8 (t_min/t_max)");
  }
  if (!(Y >= 2.0)) throw DomainError("truncation Y must be at least 2");
  if (Y > static_cast<double>(kSieveLimitMax)) throw ResourceError("Y exceeds sieve budget 2^32");
  if (Y > static_cast<double>(model.coeff_cutoff())) {
    throw RangeError("Y = " + std::to_string(Y) + " beyond coefficient cutoff of " + model.label());
  }

  const double span = t_max - t_min;
  const double regular = std::floor(span / step * (1.0 + 1e-12));
  if (regular + 2.0 > kScanMaxPoints) throw ResourceError("scan grid exceeds 1e9 points (step)");
  const auto n_regular = static_cast<std::size_t>(regular) + 1;
  const double last_regular = t_min + static_cast<double>(n_regular - 1) * step;
  const bool extra = last_regular < t_max && (t_max - last_regular) > 1e-9 * step;
  const std::size_t n_points = n_regular + (extra ? 1 : 0);

  const ScreenTable table = screen_table(model, Y, step);
  if (static_cast<double>(n_points) * static_cast<double>(table.size) > kScanMaxWork) {
    throw ResourceError("scan work (points x primes) exceeds budget; reduce Y or enlarge step");
  }
  const std::size_t keep = top_k + kCandidateMargin;

  auto point = [&](std::size_t j) { return j < n_regular ? t_min + static_cast<double>(j) * step : t_max; };

  const std::size_t chunks = (n_regular + kScanChunk - 1) / kScanChunk;
  auto partial = ordered_map<std::vector<Candidate>>(chunks, [&](std::size_t chunk) {
    const std::size_t begin = chunk * kScanChunk;
    const std::size_t count = std::min(n_regular, begin + kScanChunk) - begin;
    std::vector<double> c(table.size), s(table.size), values(count);
    screen_dispatch(table, point(begin), count, values, c, s);
    std::vector<Candidate> best;
    best.reserve(count);
    for (std::size_t j = 0; j < count; ++j) best.push_back({point(begin + j), values[j]});
    keep_best(best, keep);
    return best;
  });

  std::vector<Candidate> all;
  for (auto& part : partial) all.insert(all.end(), part.begin(), part.end());
  if (extra) {
    std::vector<double> c(table.size), s(table.size), values(1);
    screen_dispatch(table, t_max, 1, values, c, s);
    all.push_back({t_max, values[0]});
  }
  keep_best(all, keep);

  auto records = ordered_map<ScanRecord>(all.size(), [&](std::size_t i) {
    return exact_record(model, all[i].t, Y, false);
  });
  std::sort(records.begin(), records.end(), better_record);
  if (records.size() > top_k) records.resize(top_k);
  return records;
}

ScanRecord refine_peak(const LFunctionModel& model, double t_seed, double Y, double tol, double half_width,
                       double lo, double hi) {
  if (!(tol >= 1e-9)) throw DomainError("refine tolerance must be at least 1e-9");
  if (!(half_width >= 0.0) || !std::isfinite(half_width)) throw DomainError("bracket half-width must be finite");
  ScanRecord best = exact_record(model, t_seed, Y, true);
  double a = std::max(lo, t_seed - half_width);
  double b = std::min(hi, t_seed + half_width);
  if (!(b - a > tol)) return best;

  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  auto eval = [&](double t) {
    const ScanRecord r = exact_record(model, t, Y, true);
    if (better_record(r, best)) best = r;
    return r.magnitude;
  };
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = eval(x1);
  double f2 = eval(x2);
  while (b - a > tol) {
    if (f1 >= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = eval(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = eval(x2);
    }
  }
  return best;
}

BoundReport bound_report(std::span<const ScanRecord> records, const LFunctionModel& model, double T) {
  if (records.empty()) throw DomainError("bound_report needs at least one record");
  const auto top = std::min_element(records.begin(), records.end(), better_record);
  BoundReport report;
  report.label = model.label();
  report.T = T;
  report.max_t = top->t;
  report.max_magnitude = top->magnitude;
  report.bound = asymptotic_bound(model, T);
  report.difference = report.max_magnitude - report.bound;
  report.ratio = report.max_magnitude / report.bound;
  report.has_conjecture = model.pole_order() == 1;
  report.conjecture_base = report.has_conjecture ? report.bound : 0.0;
  return report;
}

}  // namespace olx
