#include "olx/moments.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "olx/detail/numeric.hpp"
#include "olx/errors.hpp"
#include "olx/parallel.hpp"
#include "olx/primes.hpp"
#include "olx/resonator.hpp"
#include "olx/summation.hpp"

namespace olx {

namespace {

constexpr int kCostBands = 8;
constexpr double kInf = std::numeric_limits<double>::infinity();

void check_moment_inputs(const LFunctionModel& model, double X, double T) {
  if (!(X > 0.0) || !std::isfinite(X)) throw DomainError("moment cutoff X must be positive");
  if (X > kMomentCutoffMax) {
    throw ResourceError("moment cutoff X = " + std::to_string(X) + " exceeds budget " +
                        std::to_string(kMomentCutoffMax));
  }
  if (X > static_cast<double>(model.coeff_cutoff())) {
    throw RangeError("moment cutoff X beyond coefficient cutoff of " + model.label());
  }
  if (!(T > 1.0) || !std::isfinite(T)) throw DomainError("moment integrals require finite T > 1");
}

struct PrimeData {
  std::uint32_t p;
  double log_p;
  double q;
  std::vector<std::complex<double>> roots;
};

std::vector<PrimeData> primes_below(const LFunctionModel& model, double X) {
  std::vector<PrimeData> out;
  if (X < 2.0) return out;
  const auto table = shared_primes(static_cast<std::uint64_t>(X));
  for (std::uint32_t p : table->up_to(X)) {
    PrimeData d{p, std::log(static_cast<double>(p)), q_of_prime(p, X), {}};
    d.roots.resize(static_cast<std::size_t>(model.degree()));
    model.roots_into(p, d.roots);
    out.push_back(std::move(d));
  }
  return out;
}

/// Normalized weights u(delta) = w(delta)/max w for one prime, delta in [lo, lo + size).
struct DeltaTable {
  double log_p = 0.0;
  int lo = 0;
  std::vector<double> weight;
  std::vector<double> cost;  // -ln weight
  double scale = 1.0;        // max raw weight
  double mass = 1.0;         // sum over all delta of normalized weights
  double slope = kInf;       // cost(delta) >= slope |delta| - offset on the table
  double offset = 0.0;
};

DeltaTable make_table(double log_p, const std::vector<double>& raw, int lo, double total_raw, double budget) {
  DeltaTable t;
  t.log_p = log_p;
  t.scale = *std::max_element(raw.begin(), raw.end());
  t.mass = total_raw / t.scale;
  const double floor = std::exp(-budget);
  std::size_t first = 0;
  std::size_t last = raw.size();
  while (first < last && raw[first] / t.scale < floor) ++first;
  while (last > first && raw[last - 1] / t.scale < floor) --last;
  t.lo = lo + static_cast<int>(first);
  for (std::size_t i = first; i < last; ++i) {
    const double u = raw[i] / t.scale;
    t.weight.push_back(u);
    t.cost.push_back(u > 0.0 ? -std::log(u) : kInf);
  }

  // Affine lower bound on the cost, from the decay rate at the table ends.
  double rate = kInf;
  const int hi = t.lo + static_cast<int>(t.weight.size()) - 1;
  if (t.lo < 0) rate = std::min(rate, t.cost.front() / -t.lo);
  if (hi > 0) rate = std::min(rate, t.cost.back() / hi);
  if (std::isfinite(rate)) {
    t.slope = 0.9 * rate;
    for (std::size_t i = 0; i < t.weight.size(); ++i) {
      const int delta = t.lo + static_cast<int>(i);
      if (std::isfinite(t.cost[i])) t.offset = std::max(t.offset, t.slope * std::abs(delta) - t.cost[i]);
    }
  }
  return t;
}

/// |delta| range needed on the q^{|delta|} side for the given budget.
int geometric_reach(double q, double budget) {
  if (q <= 0.0) return 0;
  return static_cast<int>(std::ceil((budget + 5.0) / -std::log(q)));
}

DeltaTable resonator_table(const PrimeData& d, double budget) {
  const int reach = geometric_reach(d.q, budget);
  std::vector<double> raw;
  for (int delta = -reach; delta <= reach; ++delta) raw.push_back(std::pow(d.q, std::abs(delta)));
  return make_table(d.log_p, raw, -reach, (1.0 + d.q) / (1.0 - d.q), budget);
}

DeltaTable coefficient_table(const PrimeData& d, double budget, int degree) {
  // a_kappa = h_kappa(alpha) / p^kappa, the coefficients of F(1+it; X) at p^kappa.
  const int kappa_max =
      std::min(4000, static_cast<int>(std::ceil((budget + 50.0) / d.log_p)) + 4 * degree);
  const auto series = local_series(d.roots, kappa_max);
  std::vector<double> a(series.size());
  double inv_pow = 1.0;
  for (std::size_t k = 0; k < series.size(); ++k) {
    a[k] = series[k].real() * inv_pow;
    inv_pow /= d.p;
  }
  double local_factor = 1.0;  // prod_j (1 - alpha_j/p)^{-1}
  {
    std::complex<double> prod = 1.0;
    for (const auto& alpha : d.roots) prod /= (1.0 - alpha / static_cast<double>(d.p));
    local_factor = prod.real();
  }

  const int reach_pos = geometric_reach(d.q, budget);
  const int reach_neg = std::max(reach_pos, kappa_max);
  std::vector<double> raw;
  for (int delta = -reach_neg; delta <= reach_pos; ++delta) {
    double w = 0.0;
    for (int k = 0; k <= kappa_max; ++k) {
      const int e = std::abs(delta + k);
      if (d.q == 0.0 && e != 0) continue;
      w += a[k] * (e == 0 ? 1.0 : std::pow(d.q, e));
    }
    raw.push_back(std::max(w, 0.0));
  }
  return make_table(d.log_p, raw, -reach_neg, local_factor * (1.0 + d.q) / (1.0 - d.q), budget);
}

struct LeafEntry {
  double freq;
  double cost;
  double weight;
};

std::vector<LeafEntry> leaf_entries(const std::vector<DeltaTable>& tables, std::size_t count, double budget) {
  std::vector<LeafEntry> out;
  if (count == 0) {
    out.push_back({0.0, 0.0, 1.0});
    return out;
  }
  const DeltaTable& a = tables[0];
  for (std::size_t i = 0; i < a.weight.size(); ++i) {
    if (a.cost[i] > budget) continue;
    const double fa = (a.lo + static_cast<int>(i)) * a.log_p;
    if (count == 1) {
      out.push_back({fa, a.cost[i], a.weight[i]});
      continue;
    }
    const DeltaTable& b = tables[1];
    for (std::size_t j = 0; j < b.weight.size(); ++j) {
      const double c = a.cost[i] + b.cost[j];
      if (c > budget) continue;
      out.push_back({fa + (b.lo + static_cast<int>(j)) * b.log_p, c, a.weight[i] * b.weight[j]});
    }
  }
  return out;
}

/// Leaf entries split into cost tiers; each tier is sorted by frequency and
/// indexed by buckets one window wide.
class LeafIndex {
 public:
  LeafIndex(const std::vector<LeafEntry>& entries, double budget, double width) : width_(width) {
    constexpr int kTiers = 4;
    tiers_.resize(kTiers);
    for (const auto& e : entries) {
      const int k = std::min(kTiers - 1, static_cast<int>(e.cost / budget * kTiers));
      tiers_[k].entries.push_back(e);
    }
    for (auto& tier : tiers_) {
      if (tier.entries.empty()) continue;
      std::sort(tier.entries.begin(), tier.entries.end(),
                [](const LeafEntry& x, const LeafEntry& y) { return x.freq < y.freq; });
      tier.min_cost = kInf;
      for (const auto& e : tier.entries) tier.min_cost = std::min(tier.min_cost, e.cost);
      tier.f_lo = tier.entries.front().freq;
      const auto buckets = static_cast<std::size_t>((tier.entries.back().freq - tier.f_lo) / width) + 1;
      tier.start.resize(buckets + 1);
      std::size_t i = 0;
      for (std::size_t b = 0; b <= buckets; ++b) {
        const double edge = tier.f_lo + static_cast<double>(b) * width;
        while (i < tier.entries.size() && tier.entries[i].freq < edge) ++i;
        tier.start[b] = static_cast<std::uint32_t>(i);
      }
    }
  }

  /// Calls fn(e) for entries with lo <= e.freq <= hi and e.cost <= max_cost.
  template <class Fn>
  void query(double lo, double hi, double max_cost, Fn&& fn) const {
    for (const auto& tier : tiers_) {
      if (tier.entries.empty() || tier.min_cost > max_cost) continue;
      const double from = (lo - tier.f_lo) / width_;
      if (from >= static_cast<double>(tier.start.size() - 1)) continue;
      const std::size_t b = from <= 0.0 ? 0 : static_cast<std::size_t>(from);
      const LeafEntry* it = tier.entries.data() + tier.start[b];
      const LeafEntry* end = tier.entries.data() + tier.entries.size();
      while (it != end && it->freq < lo) ++it;
      for (; it != end && it->freq <= hi; ++it) {
        if (it->cost <= max_cost) fn(*it);
      }
    }
  }

 private:
  struct Tier {
    double min_cost = kInf;
    double f_lo = 0.0;
    std::vector<LeafEntry> entries;
    std::vector<std::uint32_t> start;
  };
  std::vector<Tier> tiers_;
  double width_;
};

struct LatticeResult {
  double sum = 0.0;
  double truncation = 0.0;
  std::size_t terms = 0;
};

/// sum over delta of prod_p u_p(delta_p) exp(-(sum delta_p ln p)^2 / (4 eps^2)),
/// restricted to total cost <= budget.
LatticeResult lattice_sum(const std::vector<DeltaTable>& tables, double eps, double budget) {
  const std::size_t n = tables.size();
  const std::size_t leaf_count = std::min<std::size_t>(2, n);

  double log_mass = 0.0;
  for (const auto& t : tables) log_mass += std::log(t.mass);
  // Beyond the window the Gaussian factor is below e^{-37} / total mass.
  const double window = 2.0 * eps * std::sqrt(37.0 + std::max(0.0, log_mass));
  const double inv_four_eps2 = 1.0 / (4.0 * eps * eps);
  const double window_bound = std::exp(log_mass - window * window * inv_four_eps2);

  // Admissible bound on the cost still needed to cancel a frequency s with primes below level i.
  std::vector<double> reach_ratio(n + 1, 0.0);
  std::vector<double> reach_offset(n + 1, 0.0);
  for (std::size_t i = 1; i <= n; ++i) {
    const DeltaTable& t = tables[i - 1];
    const double ratio = std::isfinite(t.slope) && t.slope > 0.0 ? t.log_p / t.slope : 0.0;
    reach_ratio[i] = std::max(reach_ratio[i - 1], ratio);
    reach_offset[i] = reach_offset[i - 1] + t.offset;
  }

  struct Bands {
    std::array<CompensatedSum, kCostBands> mass;
    std::size_t terms = 0;
  };
  const double band_width = budget / kCostBands;

  const LeafIndex index(leaf_entries(tables, leaf_count, budget), budget, window);

  auto leaf_query = [&](Bands& bands, double s, double weight, double spent) {
    index.query(-s - window, -s + window, budget - spent, [&](const LeafEntry& e) {
      const double c = spent + e.cost;
      const double f = s + e.freq;
      const double term = weight * e.weight * std::exp(-f * f * inv_four_eps2);
      const int band = std::min(kCostBands - 1, static_cast<int>(c / band_width));
      bands.mass[band].add(term);
      ++bands.terms;
    });
  };

  auto visit = [&](auto&& self, Bands& bands, std::size_t level, double s, double weight, double spent) -> void {
    if (level < leaf_count) {
      leaf_query(bands, s, weight, spent);
      return;
    }
    const DeltaTable& t = tables[level];
    for (std::size_t i = 0; i < t.weight.size(); ++i) {
      const double c = spent + t.cost[i];
      if (c > budget) continue;
      const double s2 = s + (t.lo + static_cast<int>(i)) * t.log_p;
      if (std::abs(s2) - window > (budget - c + reach_offset[level]) * reach_ratio[level]) continue;
      self(self, bands, level - 1, s2, weight * t.weight[i], c);
    }
  };

  std::vector<Bands> parts;
  if (n > leaf_count) {
    const DeltaTable& top = tables[n - 1];
    parts = ordered_map<Bands>(top.weight.size(), [&](std::size_t i) {
      Bands bands;
      const double c = top.cost[i];
      if (c > budget) return bands;
      const double s = (top.lo + static_cast<int>(i)) * top.log_p;
      if (std::abs(s) - window > (budget - c + reach_offset[n - 1]) * reach_ratio[n - 1]) return bands;
      visit(visit, bands, n - 2, s, top.weight[i], c);
      return bands;
    });
  } else {
    parts.resize(1);
    leaf_query(parts[0], 0.0, 1.0, 0.0);
  }

  std::array<CompensatedSum, kCostBands> band_total;
  LatticeResult result;
  for (const auto& b : parts) {
    for (int k = 0; k < kCostBands; ++k) band_total[k].add(b.mass[k].value());
    result.terms += b.terms;
  }
  CompensatedSum total;
  for (const auto& b : band_total) total.add(b.value());
  result.sum = total.value();

  // Geometric extrapolation of the band masses beyond the budget.
  const double last = band_total[kCostBands - 1].value();
  const double prev = band_total[kCostBands - 2].value();
  double tail = 0.0;
  if (last > 0.0) {
    if (prev > 0.0 && last < prev) {
      const double r = last / prev;
      tail = 2.0 * last * r / (1.0 - r);
    } else {
      tail = kInf;
    }
  }
  result.truncation = tail + window_bound;
  return result;
}

}  // namespace

MomentSeries moment_series(const LFunctionModel& model, double X, double T, double n_cutoff) {
  check_moment_inputs(model, X, T);
  if (!(n_cutoff > 1.0)) throw DomainError("n_cutoff must exceed 1");
  const double eps = std::log(T) / T;
  const double budget = std::log(n_cutoff);
  const double base = std::sqrt(std::numbers::pi) / eps;

  const auto primes = primes_below(model, X);
  std::vector<DeltaTable> r_tables;
  std::vector<DeltaTable> f_tables;
  double diagonal = 1.0;
  double r_scale = 1.0;
  double f_scale = 1.0;
  for (const auto& d : primes) {
    diagonal /= (1.0 - d.q * d.q);
    r_tables.push_back(resonator_table(d, budget));
    f_tables.push_back(coefficient_table(d, budget, model.degree()));
    r_scale *= r_tables.back().scale;
    f_scale *= f_tables.back().scale;
  }

  const LatticeResult r2 = lattice_sum(r_tables, eps, budget);
  const LatticeResult r1 = lattice_sum(f_tables, eps, budget);

  MomentSeries out;
  out.I2 = base * diagonal * r_scale * r2.sum;
  out.I1 = base * diagonal * f_scale * r1.sum;
  out.I2_truncation = base * diagonal * r_scale * r2.truncation;
  out.I1_truncation = base * diagonal * f_scale * r1.truncation;
  out.terms = r1.terms + r2.terms;
  return out;
}

MomentQuadrature moment_quadrature(const LFunctionModel& model, double X, double T, double step) {
  check_moment_inputs(model, X, T);
  if (!(step > 0.0) || !std::isfinite(step)) throw DomainError("quadrature step must be positive");
  const double eps = std::log(T) / T;
  const double t_max = 6.1 / eps;
  const double h = step / 4.0;
  const double half_nodes = std::ceil(t_max / h);
  if (2.0 * half_nodes + 1.0 > 1e9) throw ResourceError("quadrature would need more than 1e9 nodes");
  const auto n_half = static_cast<std::int64_t>(half_nodes);

  const auto primes = primes_below(model, X);
  std::vector<long double> log_p;
  for (const auto& d : primes) log_p.push_back(std::log(static_cast<long double>(d.p)));

  // Sums at strides 1, 2, 4 of the fine grid, for Re I1, Im I1 and I2.
  struct Partial {
    std::array<CompensatedSum, 3> i1_re, i1_im, i2;
  };
  constexpr std::int64_t kChunk = 4096;
  const std::int64_t total_nodes = 2 * n_half + 1;
  const auto chunks = static_cast<std::size_t>((total_nodes + kChunk - 1) / kChunk);

  const auto parts = ordered_map<Partial>(chunks, [&](std::size_t c) {
    Partial part;
    const std::int64_t begin = -n_half + static_cast<std::int64_t>(c) * kChunk;
    const std::int64_t end = std::min(n_half + 1, begin + kChunk);
    for (std::int64_t j = begin; j < end; ++j) {
      const double t = static_cast<double>(j) * h;
      double r2 = 1.0;
      std::complex<double> f = 1.0;
      for (std::size_t i = 0; i < primes.size(); ++i) {
        const std::complex<double> phase = detail::unit_phase(t, log_p[i]);  // p^{-it}
        r2 /= std::norm(1.0 - primes[i].q * phase);
        const std::complex<double> z = phase / static_cast<double>(primes[i].p);
        for (const auto& alpha : primes[i].roots) f /= (1.0 - alpha * z);
      }
      const double gauss = std::exp(-(eps * t) * (eps * t));
      const double w2 = r2 * gauss;
      const std::complex<double> w1 = f * w2;
      for (int s = 0; s < 3; ++s) {
        if (j % (std::int64_t{1} << s) != 0) continue;
        part.i1_re[s].add(w1.real());
        part.i1_im[s].add(w1.imag());
        part.i2[s].add(w2);
      }
    }
    return part;
  });

  std::array<CompensatedSum, 3> i1_re, i1_im, i2;
  for (const auto& p : parts) {
    for (int s = 0; s < 3; ++s) {
      i1_re[s].add(p.i1_re[s].value());
      i1_im[s].add(p.i1_im[s].value());
      i2[s].add(p.i2[s].value());
    }
  }
  std::array<double, 3> I1{}, I2{};
  for (int s = 0; s < 3; ++s) {
    const double width = h * static_cast<double>(1 << s);
    I1[s] = i1_re[s].value() * width;
    I2[s] = i2[s].value() * width;
  }

  auto converged = [](const std::array<double, 3>& I) {
    const double fine = std::abs(I[0] - I[1]);
    const double coarse = std::abs(I[1] - I[2]);
    return fine <= coarse || fine <= 1e-12 * std::abs(I[0]);
  };
  if (!converged(I1) || !converged(I2)) {
    throw NumericError("moment quadrature did not converge under step halving: I2 at h, h/2, h/4 = " +
                       std::to_string(I2[2]) + ", " + std::to_string(I2[1]) + ", " + std::to_string(I2[0]));
  }

  MomentQuadrature out;
  out.I1 = I1[0];
  out.I2 = I2[0];
  out.I1_error = std::abs(I1[0] - I1[1]);
  out.I2_error = std::abs(I2[0] - I2[1]);
  out.I1_imag = i1_im[0].value() * h;
  out.finest_step = h;
  out.nodes = static_cast<std::size_t>(total_nodes);
  return out;
}

}  // namespace olx
