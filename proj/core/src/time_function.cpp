#include "squeeze/time_function.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <variant>

#include "squeeze/error.hpp"

namespace squeeze {

Interval intersect(const Interval& a, const Interval& b) {
  return {std::max(a.lo, b.lo), std::min(a.hi, b.hi)};
}

namespace {

struct Linear {
  std::vector<TimeFunction::Piece> pieces;
};

struct Hermite {
  std::vector<double> t, v, slope_left, slope_right;
};

struct Callable {
  std::function<double(double)> f;
};

// Index of the interval/piece containing t, with right-continuous convention.
std::size_t locate(const std::vector<double>& starts, double t) {
  auto it = std::upper_bound(starts.begin(), starts.end(), t);
  if (it == starts.begin()) return 0;
  return static_cast<std::size_t>(it - starts.begin()) - 1;
}

}  // namespace

struct TimeFunction::Impl {
  std::variant<Linear, Hermite, Callable> rep;
  Interval domain;
  std::vector<double> breakpoints;
  std::vector<double> starts;  // piece starts or node times, for lookup
  bool constant = false;

  double eval(double t) const {
    if (!domain.contains(t)) {
      std::ostringstream os;
      os << "time " << t << " outside function domain [" << domain.lo << ", " << domain.hi << "]";
      throw DomainError(os.str());
    }
    if (const auto* lin = std::get_if<Linear>(&rep)) {
      const auto& p = lin->pieces[locate(starts, t)];
      if (p.slope == 0.0) return p.value;
      return p.value + p.slope * (t - p.start);
    }
    if (const auto* h = std::get_if<Hermite>(&rep)) {
      std::size_t i = locate(starts, t);
      if (i + 1 >= h->t.size()) return h->v.back();
      const double dt = h->t[i + 1] - h->t[i];
      const double s = (t - h->t[i]) / dt;
      const double s2 = s * s;
      const double s3 = s2 * s;
      const double h00 = 2 * s3 - 3 * s2 + 1;
      const double h10 = s3 - 2 * s2 + s;
      const double h01 = -2 * s3 + 3 * s2;
      const double h11 = s3 - s2;
      return h00 * h->v[i] + h10 * dt * h->slope_right[i] + h01 * h->v[i + 1] +
             h11 * dt * h->slope_left[i + 1];
    }
    return std::get<Callable>(rep).f(t);
  }
};

TimeFunction::TimeFunction() : TimeFunction(constant(0.0)) {}

TimeFunction::TimeFunction(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

TimeFunction TimeFunction::constant(double value) {
  if (!std::isfinite(value)) throw ArgumentError("constant time function must be finite");
  auto impl = std::make_shared<Impl>();
  impl->rep = Linear{{Piece{-std::numeric_limits<double>::infinity(), value, 0.0}}};
  impl->starts = {-std::numeric_limits<double>::infinity()};
  impl->constant = true;
  return TimeFunction(std::move(impl));
}

TimeFunction TimeFunction::step(double before, double after, double at) {
  const double inf = std::numeric_limits<double>::infinity();
  if (before == after) return constant(before);
  return piecewise({Piece{-inf, before, 0.0}, Piece{at, after, 0.0}});
}

TimeFunction TimeFunction::ramp(double t0, double v0, double t1, double v1) {
  const double inf = std::numeric_limits<double>::infinity();
  if (!(t1 > t0)) throw ArgumentError("ramp requires t1 > t0");
  return piecewise({Piece{-inf, v0, 0.0}, Piece{t0, v0, (v1 - v0) / (t1 - t0)}, Piece{t1, v1, 0.0}});
}

TimeFunction TimeFunction::piecewise(std::vector<Piece> pieces, double domain_end) {
  if (pieces.empty()) throw ArgumentError("piecewise function needs at least one piece");
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    const auto& p = pieces[i];
    if (std::isnan(p.start) || !std::isfinite(p.value) || !std::isfinite(p.slope))
      throw ArgumentError("piecewise function has non-finite piece data");
    if (std::isinf(p.start) && (p.start > 0 || p.slope != 0.0))
      throw ArgumentError("a piece starting at -inf must be constant");
    if (i > 0 && !(p.start > pieces[i - 1].start))
      throw ArgumentError("piece starts must be strictly increasing");
  }
  if (std::isinf(domain_end) && pieces.back().slope != 0.0)
    throw ArgumentError("an unbounded final piece must be constant");
  if (!(domain_end >= pieces.back().start)) throw ArgumentError("domain end precedes last piece");

  auto impl = std::make_shared<Impl>();
  impl->domain = {pieces.front().start, domain_end};
  bool constant = true;
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    impl->starts.push_back(pieces[i].start);
    if (i > 0) impl->breakpoints.push_back(pieces[i].start);
    if (pieces[i].slope != 0.0 || pieces[i].value != pieces.front().value) constant = false;
  }
  impl->constant = constant && std::isinf(impl->domain.lo) && std::isinf(impl->domain.hi);
  impl->rep = Linear{std::move(pieces)};
  return TimeFunction(std::move(impl));
}

TimeFunction TimeFunction::tabulated(std::vector<double> t, std::vector<double> v) {
  if (t.size() != v.size() || t.size() < 2) throw ArgumentError("table needs >= 2 matching (t, v) entries");
  std::vector<Piece> pieces;
  for (std::size_t i = 0; i + 1 < t.size(); ++i) {
    if (!(t[i + 1] > t[i])) throw ArgumentError("table times must be strictly increasing");
    pieces.push_back({t[i], v[i], (v[i + 1] - v[i]) / (t[i + 1] - t[i])});
  }
  if (!std::isfinite(t.front()) || !std::isfinite(t.back())) throw ArgumentError("table times must be finite");
  return piecewise(std::move(pieces), t.back());
}

TimeFunction TimeFunction::hermite(std::vector<double> t, std::vector<double> v, std::vector<double> slope_left,
                                   std::vector<double> slope_right) {
  const std::size_t n = t.size();
  if (n < 2 || v.size() != n || slope_left.size() != n || slope_right.size() != n)
    throw ArgumentError("hermite table needs >= 2 nodes with matching values and slopes");
  for (std::size_t i = 0; i + 1 < n; ++i)
    if (!(t[i + 1] > t[i])) throw ArgumentError("hermite nodes must be strictly increasing");
  auto impl = std::make_shared<Impl>();
  impl->domain = {t.front(), t.back()};
  impl->starts = t;
  for (std::size_t i = 1; i + 1 < n; ++i)
    if (slope_left[i] != slope_right[i]) impl->breakpoints.push_back(t[i]);
  impl->rep = Hermite{std::move(t), std::move(v), std::move(slope_left), std::move(slope_right)};
  return TimeFunction(std::move(impl));
}

TimeFunction TimeFunction::from_callable(std::function<double(double)> f, Interval domain,
                                         std::vector<double> breakpoints) {
  if (!f) throw ArgumentError("callable time function is empty");
  std::sort(breakpoints.begin(), breakpoints.end());
  breakpoints.erase(std::unique(breakpoints.begin(), breakpoints.end()), breakpoints.end());
  auto impl = std::make_shared<Impl>();
  impl->domain = domain;
  for (double b : breakpoints)
    if (b > domain.lo && b < domain.hi) impl->breakpoints.push_back(b);
  impl->rep = Callable{std::move(f)};
  return TimeFunction(std::move(impl));
}

double TimeFunction::operator()(double t) const { return impl_->eval(t); }

Interval TimeFunction::domain() const { return impl_->domain; }

const std::vector<double>& TimeFunction::breakpoints() const { return impl_->breakpoints; }

bool TimeFunction::is_constant() const { return impl_->constant; }

double TimeFunction::sup_abs(double lo, double hi) const {
  lo = std::max(lo, impl_->domain.lo);
  hi = std::min(hi, impl_->domain.hi);
  if (lo > hi) return 0.0;
  if (const auto* lin = std::get_if<Linear>(&impl_->rep)) {
    double m = 0.0;
    auto probe = [&](double t) {
      if (std::isfinite(t)) m = std::max(m, std::abs(impl_->eval(t)));
    };
    probe(lo);
    probe(hi);
    for (const auto& p : lin->pieces) {
      if (p.start > lo && p.start <= hi) {
        probe(p.start);
        probe(std::nextafter(p.start, -std::numeric_limits<double>::infinity()));
      }
      if (std::isinf(p.start) || std::isinf(lo)) m = std::max(m, std::abs(p.value));
    }
    return m;
  }
  double a = std::isfinite(lo) ? lo : (std::isfinite(hi) ? hi - 1e3 : -1e3);
  double b = std::isfinite(hi) ? hi : a + 1e3;
  double m = 0.0;
  constexpr int kSamples = 2048;
  for (int i = 0; i <= kSamples; ++i) m = std::max(m, std::abs(impl_->eval(a + (b - a) * i / kSamples)));
  for (double t : impl_->starts)
    if (t >= a && t <= b) m = std::max(m, std::abs(impl_->eval(t)));
  return m;
}

double TimeFunction::knot_minimum() const {
  double m = std::numeric_limits<double>::infinity();
  auto probe = [&](double t) {
    if (std::isfinite(t) && impl_->domain.contains(t)) m = std::min(m, impl_->eval(t));
  };
  probe(impl_->domain.lo);
  probe(impl_->domain.hi);
  if (const auto* lin = std::get_if<Linear>(&impl_->rep)) {
    for (const auto& p : lin->pieces) {
      if (std::isinf(p.start)) {
        m = std::min(m, p.value);
      } else {
        probe(p.start);
        probe(std::nextafter(p.start, -std::numeric_limits<double>::infinity()));
      }
    }
  } else if (const auto* h = std::get_if<Hermite>(&impl_->rep)) {
    for (double v : h->v) m = std::min(m, v);
  }
  for (double b : impl_->breakpoints) probe(b);
  return m;
}

}  // namespace squeeze
