#include "tangenttri/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <thread>

#include "kernels/scalar_math.hpp"
#include "tangenttri/constants.hpp"
#include "tangenttri/errors.hpp"
#include "tangenttri/kernels.hpp"

namespace tangenttri::sampling {
namespace {

constexpr double kMinPerimeter = 6.0 * std::numbers::sqrt3;

std::uint64_t block_count(std::uint64_t n) { return (n + kBlockSize - 1) / kBlockSize; }

// Runs fn(block, first_index, count) for every block of [first, first + n),
// splitting contiguous block ranges across shards.
template <class Fn>
void run_blocks(std::uint64_t first, std::uint64_t n, unsigned shards, Fn fn) {
  const std::uint64_t blocks = block_count(n);
  auto run_range = [&](std::uint64_t b0, std::uint64_t b1) {
    for (std::uint64_t b = b0; b < b1; ++b) {
      const std::uint64_t offset = b * kBlockSize;
      const std::size_t count = static_cast<std::size_t>(std::min<std::uint64_t>(kBlockSize, n - offset));
      fn(b, first + offset, count);
    }
  };
  const std::uint64_t workers = std::max<std::uint64_t>(1, std::min<std::uint64_t>(shards, blocks));
  if (workers <= 1) {
    run_range(0, blocks);
    return;
  }
  std::vector<std::thread> threads;
  threads.reserve(workers);
  for (std::uint64_t w = 0; w < workers; ++w) {
    const std::uint64_t b0 = blocks * w / workers;
    const std::uint64_t b1 = blocks * (w + 1) / workers;
    threads.emplace_back(run_range, b0, b1);
  }
  for (auto& t : threads) t.join();
}

void require_samples(std::uint64_t n) {
  if (n < 1) throw DomainError("sample count must be at least 1");
}

void require_bins(int bins) {
  if (bins < 1) throw DomainError("bin count must be at least 1");
}

// Distribution-free standard error of the sample median: half the distance
// between the order statistics n/2 -/+ sqrt(n)/2.
double median_std_error(std::span<const double> ascending) {
  const double n = static_cast<double>(ascending.size());
  const double half_width = std::sqrt(n) / 2.0;
  const auto last = static_cast<double>(ascending.size() - 1);
  const auto lo = static_cast<std::size_t>(std::clamp(std::floor(n / 2.0 - half_width), 0.0, last));
  const auto hi = static_cast<std::size_t>(std::clamp(std::ceil(n / 2.0 + half_width), 0.0, last));
  return (ascending[hi] - ascending[lo]) / 2.0;
}

double ordered_mean(std::span<const double> values, unsigned shards) {
  const auto& k = kernels::active();
  std::vector<double> block_sums(block_count(values.size()));
  run_blocks(0, values.size(), shards, [&](std::uint64_t b, std::uint64_t first, std::size_t count) {
    block_sums[b] = k.lane_sum(values.data() + first, count);
  });
  double total = 0.0;
  for (const double s : block_sums) total += s;
  return total / static_cast<double>(values.size());
}

// Shared summary for heavy-tailed samples: median estimate plus order
// statistics and the sample mean.
SimulationSummary summarize_heavy_tailed(std::span<const double> values, std::span<const double> ascending,
                                         unsigned shards) {
  SimulationSummary s;
  s.n = values.size();
  s.estimate = empirical_quantile(ascending, 0.5);
  s.std_error = median_std_error(ascending);
  s.extra = {{"min", ascending.front()},
             {"q25", empirical_quantile(ascending, 0.25)},
             {"median", s.estimate},
             {"q75", empirical_quantile(ascending, 0.75)},
             {"q90", empirical_quantile(ascending, 0.90)},
             {"max", ascending.back()},
             {"sample_mean", ordered_mean(values, shards)}};
  return s;
}

}  // namespace

double SimulationSummary::at(std::string_view name) const {
  for (const auto& v : extra) {
    if (v.name == name) return v.value;
  }
  throw std::out_of_range("SimulationSummary: no field named " + std::string(name));
}

Histogram make_histogram(std::span<const double> values, double lo, double hi, int bins, bool overflow_bin) {
  require_bins(bins);
  if (!(lo < hi)) throw DomainError("make_histogram: requires lo < hi");
  Histogram h;
  const double width = (hi - lo) / bins;
  h.bin_edges.reserve(static_cast<std::size_t>(bins) + 2);
  for (int i = 0; i < bins; ++i) h.bin_edges.push_back(lo + i * width);
  h.bin_edges.push_back(hi);
  if (overflow_bin) h.bin_edges.push_back(std::numeric_limits<double>::infinity());
  h.counts.assign(h.bin_edges.size() - 1, 0);
  const std::size_t last_regular = static_cast<std::size_t>(bins) - 1;
  for (const double x : values) {
    std::size_t bin;
    if (x >= hi) {
      bin = overflow_bin ? last_regular + 1 : last_regular;
    } else if (x <= lo) {
      bin = 0;
    } else {
      bin = std::min(last_regular, static_cast<std::size_t>((x - lo) / width));
    }
    ++h.counts[bin];
  }
  h.total = values.size();
  return h;
}

double sample_theta_single(Rng& rng) {
  double theta1;
  double theta2;
  kernels::scalar::angles_from_block(rng.next(), theta1, theta2);
  return theta1;
}

double sample_side_single(Rng& rng) { return kernels::scalar::cot_half(sample_theta_single(rng)); }

geometry::ContactAngles sample_contacts(Rng& rng) {
  geometry::ContactAngles c{};
  kernels::scalar::contacts_from_block(rng.next(), c.alpha, c.beta);
  return c;
}

double sample_side_incircle(Rng& rng) {
  const auto c = sample_contacts(rng);
  return kernels::scalar::side(c.alpha, c.beta);
}

double sample_side_naive(Rng& rng) {
  double theta1;
  double theta2;
  kernels::scalar::angles_from_block(rng.next(), theta1, theta2);
  return kernels::scalar::side(theta1, theta2);
}

rng::Stream stream_for(DensityModel model) {
  switch (model) {
    case DensityModel::SingleTangent:
      return rng::Stream::SingleTangent;
    case DensityModel::NaiveConvolution:
      return rng::Stream::NaiveConvolution;
    case DensityModel::IncircleConditioned:
      return rng::Stream::Contacts;
  }
  return rng::Stream::Contacts;
}

std::vector<double> sample_sides(DensityModel model, std::uint64_t n, Seed seed, unsigned shards) {
  require_samples(n);
  const auto& k = kernels::active();
  const auto key = rng::key_from_seed(seed);
  const auto stream = static_cast<std::uint32_t>(stream_for(model));
  std::vector<double> out(n);
  run_blocks(0, n, shards, [&](std::uint64_t, std::uint64_t first, std::size_t count) {
    std::vector<double> a(count);
    std::vector<double> b(count);
    double* dst = out.data() + first;
    switch (model) {
      case DensityModel::IncircleConditioned:
        k.contacts(key, stream, first, count, a.data(), b.data());
        k.side_from_contacts(a.data(), b.data(), count, dst);
        break;
      case DensityModel::NaiveConvolution:
        k.angle_pairs(key, stream, first, count, a.data(), b.data());
        k.side_from_contacts(a.data(), b.data(), count, dst);
        break;
      case DensityModel::SingleTangent:
        k.angle_pairs(key, stream, first, count, a.data(), b.data());
        k.cot_half(a.data(), count, dst);
        break;
    }
  });
  return out;
}

void sample_contact_arrays(std::uint64_t n, Seed seed, std::vector<double>& alpha, std::vector<double>& beta,
                           unsigned shards) {
  require_samples(n);
  const auto& k = kernels::active();
  const auto key = rng::key_from_seed(seed);
  const auto stream = static_cast<std::uint32_t>(rng::Stream::Contacts);
  alpha.assign(n, 0.0);
  beta.assign(n, 0.0);
  run_blocks(0, n, shards, [&](std::uint64_t, std::uint64_t first, std::size_t count) {
    k.contacts(key, stream, first, count, alpha.data() + first, beta.data() + first);
  });
}

std::vector<double> sample_perimeters(std::uint64_t n, Seed seed, unsigned shards) {
  require_samples(n);
  const auto& k = kernels::active();
  const auto key = rng::key_from_seed(seed);
  const auto stream = static_cast<std::uint32_t>(rng::Stream::Contacts);
  std::vector<double> out(n);
  run_blocks(0, n, shards, [&](std::uint64_t, std::uint64_t first, std::size_t count) {
    std::vector<double> a(count);
    std::vector<double> b(count);
    k.contacts(key, stream, first, count, a.data(), b.data());
    k.perimeter_from_contacts(a.data(), b.data(), count, out.data() + first);
  });
  return out;
}

SimulationSummary estimate_acute_probability(std::uint64_t n, Seed seed, unsigned shards) {
  require_samples(n);
  const auto& k = kernels::active();
  const auto key = rng::key_from_seed(seed);
  const auto stream = static_cast<std::uint32_t>(rng::Stream::Contacts);
  std::vector<std::uint64_t> counts(block_count(n));
  run_blocks(0, n, shards, [&](std::uint64_t b, std::uint64_t first, std::size_t count) {
    std::vector<double> alpha(count);
    std::vector<double> beta(count);
    k.contacts(key, stream, first, count, alpha.data(), beta.data());
    counts[b] = k.count_acute(alpha.data(), beta.data(), count);
  });
  std::uint64_t acute = 0;
  for (const auto c : counts) acute += c;
  SimulationSummary s;
  s.n = n;
  s.estimate = static_cast<double>(acute) / static_cast<double>(n);
  s.std_error = std::sqrt(s.estimate * (1.0 - s.estimate) / static_cast<double>(n));
  s.extra = {{"acute_count", static_cast<double>(acute)}, {"exact", 0.25}};
  return s;
}

SimulationSummary estimate_alpha_mean(std::uint64_t n, Seed seed, unsigned shards) {
  require_samples(n);
  const auto& k = kernels::active();
  const auto key = rng::key_from_seed(seed);
  const auto stream = static_cast<std::uint32_t>(rng::Stream::Contacts);
  const std::uint64_t blocks = block_count(n);
  std::vector<double> sums(blocks);
  std::vector<double> squares(blocks);
  std::vector<kernels::MinMax> ranges(blocks);
  run_blocks(0, n, shards, [&](std::uint64_t b, std::uint64_t first, std::size_t count) {
    std::vector<double> alpha(count);
    std::vector<double> beta(count);
    k.contacts(key, stream, first, count, alpha.data(), beta.data());
    sums[b] = k.lane_sum(alpha.data(), count);
    for (std::size_t i = 0; i < count; ++i) beta[i] = alpha[i] * alpha[i];
    squares[b] = k.lane_sum(beta.data(), count);
    ranges[b] = k.min_max(alpha.data(), count);
  });
  double sum = 0.0;
  double sum_sq = 0.0;
  kernels::MinMax range{ranges.front()};
  for (std::uint64_t b = 0; b < blocks; ++b) {
    sum += sums[b];
    sum_sq += squares[b];
    range.min = std::min(range.min, ranges[b].min);
    range.max = std::max(range.max, ranges[b].max);
  }
  const double count = static_cast<double>(n);
  const double mean = sum / count;
  const double variance = n > 1 ? std::max(0.0, (sum_sq - count * mean * mean) / (count - 1.0)) : 0.0;
  SimulationSummary s;
  s.n = n;
  s.estimate = mean;
  s.std_error = std::sqrt(variance / count);
  s.extra = {{"sd", std::sqrt(variance)},
             {"min", range.min},
             {"max", range.max},
             {"expected", std::numbers::pi / 3.0}};
  return s;
}

DistributionSimulation simulate_alpha(std::uint64_t n, Seed seed, int bins, unsigned shards) {
  require_bins(bins);
  DistributionSimulation out;
  out.summary = estimate_alpha_mean(n, seed, shards);
  std::vector<double> alpha;
  std::vector<double> beta;
  sample_contact_arrays(n, seed, alpha, beta, shards);
  out.histogram = make_histogram(alpha, 0.0, kPi, bins, false);
  return out;
}

DistributionSimulation simulate_side(DensityModel model, std::uint64_t n, Seed seed, int bins, unsigned shards) {
  require_bins(bins);
  const std::vector<double> values = sample_sides(model, n, seed, shards);
  std::vector<double> ascending = values;
  std::sort(ascending.begin(), ascending.end());

  DistributionSimulation out;
  out.summary = summarize_heavy_tailed(values, ascending, shards);
  const double ks = ks_statistic_values(analytic::cdf_sorted(model, ascending));
  const auto below_two = std::upper_bound(ascending.begin(), ascending.end(), 2.0) - ascending.begin();
  out.summary.extra.push_back({"ks", ks});
  out.summary.extra.push_back({"ks_critical_5pct", 1.36 / std::sqrt(static_cast<double>(n))});
  out.summary.extra.push_back({"fraction_le_2", static_cast<double>(below_two) / static_cast<double>(n)});

  const double lo = analytic::support_lower(model);
  const double hi = analytic::quantile(model, 0.999);
  out.histogram = make_histogram(values, lo, hi, bins, true);
  return out;
}

double perimeter_histogram_cap() {
  static const double cap = 3.0 * analytic::quantile(DensityModel::IncircleConditioned, 1.0 - 0.001 / 3.0);
  return cap;
}

DistributionSimulation simulate_perimeter(std::uint64_t n, Seed seed, int bins, unsigned shards) {
  require_bins(bins);
  const std::vector<double> values = sample_perimeters(n, seed, shards);
  std::vector<double> ascending = values;
  std::sort(ascending.begin(), ascending.end());

  DistributionSimulation out;
  out.summary = summarize_heavy_tailed(values, ascending, shards);
  const auto below_floor = std::lower_bound(ascending.begin(), ascending.end(), kMinPerimeter) - ascending.begin();
  out.summary.extra.push_back({"floor", kMinPerimeter});
  out.summary.extra.push_back({"below_floor", static_cast<double>(below_floor)});
  out.histogram = make_histogram(values, kMinPerimeter, perimeter_histogram_cap(), bins, true);
  return out;
}

std::vector<double> running_side_means(Seed seed, std::span<const std::uint64_t> checkpoints, unsigned shards) {
  const auto& k = kernels::active();
  const auto key = rng::key_from_seed(seed);
  const auto stream = static_cast<std::uint32_t>(rng::Stream::Contacts);
  std::vector<double> means;
  means.reserve(checkpoints.size());
  double running = 0.0;
  std::uint64_t done = 0;
  for (const std::uint64_t target : checkpoints) {
    if (target < 1 || target < done) throw DomainError("running_side_means: checkpoints must be ascending and >= 1");
    const std::uint64_t n = target - done;
    std::vector<double> block_sums(block_count(n));
    run_blocks(done, n, shards, [&](std::uint64_t b, std::uint64_t first, std::size_t count) {
      std::vector<double> a(count);
      std::vector<double> c(count);
      k.contacts(key, stream, first, count, a.data(), c.data());
      k.side_from_contacts(a.data(), c.data(), count, a.data());
      block_sums[b] = k.lane_sum(a.data(), count);
    });
    for (const double s : block_sums) running += s;
    done = target;
    means.push_back(running / static_cast<double>(done));
  }
  return means;
}

double ks_statistic_values(std::span<const double> cdf_at_samples) {
  if (cdf_at_samples.empty()) throw DomainError("ks_statistic: empty sample");
  const double n = static_cast<double>(cdf_at_samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < cdf_at_samples.size(); ++i) {
    const double f = cdf_at_samples[i];
    const double above = std::abs(static_cast<double>(i + 1) / n - f);
    const double below = std::abs(static_cast<double>(i) / n - f);
    d = std::max({d, above, below});
  }
  return d;
}

double ks_statistic(std::span<const double> ascending, const std::function<double(double)>& cdf) {
  if (ascending.empty()) throw DomainError("ks_statistic: empty sample");
  if (!std::is_sorted(ascending.begin(), ascending.end())) throw DomainError("ks_statistic: sample must be sorted");
  std::vector<double> values;
  values.reserve(ascending.size());
  for (const double x : ascending) values.push_back(cdf(x));
  return ks_statistic_values(values);
}

double empirical_quantile(std::span<const double> ascending, double p) {
  if (ascending.empty()) throw DomainError("empirical_quantile: empty sample");
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("empirical_quantile: p must lie in [0, 1]");
  const double h = static_cast<double>(ascending.size() - 1) * p;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  if (lo + 1 >= ascending.size()) return ascending.back();
  return ascending[lo] + (h - static_cast<double>(lo)) * (ascending[lo + 1] - ascending[lo]);
}

GeometryAudit audit_geometry(std::uint64_t n, Seed seed, unsigned shards) {
  std::vector<double> alpha;
  std::vector<double> beta;
  sample_contact_arrays(n, seed, alpha, beta, shards);
  std::vector<GeometryAudit> partial(block_count(n));
  run_blocks(0, n, shards, [&](std::uint64_t b, std::uint64_t first, std::size_t count) {
    GeometryAudit& a = partial[b];
    a.n = count;
    for (std::size_t i = first; i < first + count; ++i) {
      const geometry::ContactAngles c{alpha[i], beta[i]};
      const auto gaps = geometry::gaps_from_contacts(c);
      if (!(c.alpha + c.beta < kPi) || geometry::classify(gaps) != geometry::TangencyClass::Incircle) {
        ++a.class_violations;
        continue;
      }
      if (gaps.max() > kPi - geometry::kDegenerateGapMargin) {
        ++a.degenerate;
        continue;
      }
      const auto t = geometry::triangle_from_contacts(c);
      const double area_dev = std::abs(t.area - t.perimeter / 2.0) / t.area;
      a.max_area_rel_deviation = std::max(a.max_area_rel_deviation, area_dev);
      if (!(area_dev <= 1e-9)) ++a.area_violations;
      double worst = 0.0;
      for (const double d : geometry::side_line_distances(t)) worst = std::max(worst, std::abs(d - 1.0));
      a.max_inradius_deviation = std::max(a.max_inradius_deviation, worst);
      if (!(worst <= 1e-9)) ++a.inradius_violations;
      if (!(std::abs(t.angles[0] + t.angles[1] + t.angles[2] - kPi) <= 1e-10)) ++a.angle_violations;
    }
  });
  GeometryAudit total;
  for (const auto& a : partial) {
    total.n += a.n;
    total.area_violations += a.area_violations;
    total.inradius_violations += a.inradius_violations;
    total.angle_violations += a.angle_violations;
    total.class_violations += a.class_violations;
    total.degenerate += a.degenerate;
    total.max_area_rel_deviation = std::max(total.max_area_rel_deviation, a.max_area_rel_deviation);
    total.max_inradius_deviation = std::max(total.max_inradius_deviation, a.max_inradius_deviation);
  }
  return total;
}

}  // namespace tangenttri::sampling
