#include "diophlab/numeric/standard_part.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "diophlab/core/error.hpp"

namespace diophlab {

NearestInteger nearest_integer(const PrecisionReal& x) {
  if (x.exact()) {
    Integer n = round_half_even(*x.exact());
    return {n, PrecisionReal(Rational(*x.exact() - n), x.precision())};
  }
  const Interval& e = x.enclosure();
  if (e.is_point()) return nearest_integer(PrecisionReal(e.lo_rational(), e.precision()));
  if (!e.width_within(2) || e.width() >= Rational(1, 4))
    fail(ErrorCode::PrecisionInsufficient, "enclosure wider than 1/4");
  Rational half(1, 2);
  Integer lo_n = floor(Rational(e.lo_rational() + half));
  Integer hi_n = floor(Rational(e.hi_rational() + half));
  // Any half-integer inside [lo, hi] leaves the rounding undecided.
  if (lo_n != hi_n || e.contains(Rational(lo_n) - half))
    fail(ErrorCode::PrecisionInsufficient, "enclosure straddles a half-integer");
  Interval r = e - Interval(Rational(lo_n), e.precision());
  return {lo_n, PrecisionReal(r)};
}

NearestInteger nearest_integer(const RealOracle& x, long bits, long cap_bits) {
  for (long b = bits;; b *= 2) {
    try {
      return nearest_integer(x.eval(b));
    } catch (const Error& err) {
      if (err.code() != ErrorCode::PrecisionInsufficient || b * 2 > cap_bits) throw;
    }
  }
}

PrecisionReal distance_to_integer(const PrecisionReal& x) { return nearest_integer(x).residual.abs(); }

namespace {

double wrap01(double v) {
  double f = v - std::floor(v);
  return f >= 1.0 ? 0.0 : f;
}

}  // namespace

StdEstimate std_estimate(const std::vector<PrecisionReal>& values, const StdPolicy& policy) {
  StdEstimate out;
  const std::size_t n = values.size();
  if (n == 0) return out;
  const bool circle = policy.mode == StdMode::Circle;
  std::vector<double> pos(n);
  for (std::size_t i = 0; i < n; ++i) {
    double m = values[i].mid_double();
    pos[i] = circle ? wrap01(m) : m;
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return pos[a] < pos[b]; });

  // Cut the sorted ring or line at every gap wider than the radius.
  std::size_t start = 0;
  if (circle) {
    double best_gap = -1;
    for (std::size_t k = 0; k < n; ++k) {
      double next = k + 1 < n ? pos[order[k + 1]] : pos[order[0]] + 1.0;
      double gap = next - pos[order[k]];
      if (gap > best_gap) {
        best_gap = gap;
        start = (k + 1) % n;
      }
    }
    if (best_gap <= policy.radius) start = 0;
  }
  std::vector<std::vector<std::size_t>> groups;
  double prev = 0;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t idx = order[(start + k) % n];
    double p = pos[idx];
    if (circle && start + k >= n) p += 1.0;
    if (k == 0 || p - prev > policy.radius) groups.emplace_back();
    groups.back().push_back(idx);
    prev = p;
  }

  const std::size_t tail_begin = n / 2;
  const std::size_t tail_size = n - tail_begin;
  std::size_t best = 0;
  for (std::size_t g = 0; g < groups.size(); ++g) {
    Cluster c;
    c.count = groups[g].size();
    double sum = 0;
    double anchor = pos[groups[g].front()];
    std::size_t in_tail = 0;
    for (auto idx : groups[g]) {
      double p = pos[idx];
      if (circle && p < anchor - 0.5) p += 1.0;
      sum += p;
      if (idx >= tail_begin) ++in_tail;
    }
    c.center = circle ? wrap01(sum / static_cast<double>(c.count)) : sum / static_cast<double>(c.count);
    c.density = static_cast<double>(c.count) / static_cast<double>(n);
    c.tail_density = static_cast<double>(in_tail) / static_cast<double>(tail_size);
    out.clusters.push_back(c);
    const Cluster& b = out.clusters[best];
    if (c.tail_density > b.tail_density || (c.tail_density == b.tail_density && c.density > b.density)) best = g;
  }

  if (out.clusters[best].tail_density >= policy.rho) {
    std::optional<Interval> hull;
    double anchor = pos[groups[best].front()];
    for (auto idx : groups[best]) {
      if (idx < tail_begin) continue;
      Interval v = values[idx].enclosure();
      if (circle) {
        // Shift each member by an integer so the cluster stays contiguous.
        double shift = std::floor(values[idx].mid_double()) + ((pos[idx] < anchor - 0.5) ? -1.0 : 0.0);
        v = v - Interval(Rational(shift), v.precision());
      }
      hull = hull ? Interval::hull(*hull, v) : v;
    }
    if (circle && hull->mid_double() >= 0.5) hull = *hull - Interval(Rational(1), hull->precision());
    out.has_limit = true;
    out.limit = hull;
  }
  std::vector<std::size_t> idx(out.clusters.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(),
                   [&](std::size_t a, std::size_t b) { return out.clusters[a].center < out.clusters[b].center; });
  std::vector<Cluster> sorted;
  for (auto i : idx) sorted.push_back(out.clusters[i]);
  out.clusters = std::move(sorted);
  return out;
}

}  // namespace diophlab
