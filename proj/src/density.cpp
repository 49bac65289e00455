#include <covenant/density.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include <covenant/quadrature.hpp>

namespace covenant {

namespace {

constexpr double kMassTol = 1e-8;
constexpr double kSymTol = 1e-9;

void require_degree(double x) {
  if (!(x >= -1.0 && x <= 1.0))
    throw std::invalid_argument("error degree outside [-1, 1]: " + std::to_string(x));
}

double trapezoid_mass(const std::vector<DensityKnot>& knots) {
  double mass = 0.0;
  for (std::size_t i = 0; i + 1 < knots.size(); ++i)
    mass += 0.5 * (knots[i].f + knots[i + 1].f) * (knots[i + 1].x - knots[i].x);
  return mass;
}

}  // namespace

const char* to_string(DensityKind k) {
  switch (k) {
    case DensityKind::uniform: return "uniform";
    case DensityKind::triangular: return "triangular";
    case DensityKind::tabulated: return "tabulated";
  }
  return "?";
}

ErrorDensity ErrorDensity::uniform() { return ErrorDensity(DensityKind::uniform); }

ErrorDensity ErrorDensity::triangular() { return ErrorDensity(DensityKind::triangular); }

std::vector<DensityKnot> ErrorDensity::normalized(std::vector<DensityKnot> knots) {
  const double mass = trapezoid_mass(knots);
  if (!(mass > 0.0) || !std::isfinite(mass))
    throw std::invalid_argument("density table has nonpositive total mass");
  for (auto& k : knots) k.f /= mass;
  return knots;
}

ErrorDensity ErrorDensity::tabulated(std::vector<DensityKnot> knots) {
  if (knots.size() < 2) throw std::invalid_argument("density table needs at least two knots");
  for (const auto& k : knots) {
    if (!std::isfinite(k.x) || !std::isfinite(k.f))
      throw std::invalid_argument("density table has non-finite entries");
    if (k.f < 0.0) throw std::invalid_argument("density table has negative values");
  }
  for (std::size_t i = 0; i + 1 < knots.size(); ++i)
    if (!(knots[i].x < knots[i + 1].x))
      throw std::invalid_argument("density table knots must be strictly increasing");
  if (std::abs(knots.front().x + 1.0) > 1e-12 || std::abs(knots.back().x - 1.0) > 1e-12)
    throw std::invalid_argument("density table must span exactly [-1, 1]");
  knots.front().x = -1.0;
  knots.back().x = 1.0;

  const std::size_t n = knots.size();
  for (std::size_t i = 0; i < n; ++i) {
    const auto& a = knots[i];
    const auto& b = knots[n - 1 - i];
    if (std::abs(a.x + b.x) > kSymTol || std::abs(a.f - b.f) > kSymTol)
      throw std::invalid_argument("density table is not symmetric about zero");
  }

  const double mass = trapezoid_mass(knots);
  if (std::abs(mass - 1.0) > kMassTol)
    throw std::invalid_argument("density table mass is " + std::to_string(mass) +
                                ", not 1 (use ErrorDensity::normalized)");

  ErrorDensity d(DensityKind::tabulated);
  d.cum_.resize(n, 0.0);
  for (std::size_t i = 0; i + 1 < n; ++i)
    d.cum_[i + 1] = d.cum_[i] + 0.5 * (knots[i].f + knots[i + 1].f) * (knots[i + 1].x - knots[i].x);
  d.knots_ = std::move(knots);
  return d;
}

double ErrorDensity::pdf(double x) const {
  require_degree(x);
  switch (kind_) {
    case DensityKind::uniform:
      return 0.5;
    case DensityKind::triangular:
      return 1.0 - std::abs(x);
    case DensityKind::tabulated: {
      auto it = std::upper_bound(knots_.begin(), knots_.end(), x,
                                 [](double v, const DensityKnot& k) { return v < k.x; });
      if (it == knots_.begin()) return knots_.front().f;
      if (it == knots_.end()) return knots_.back().f;
      const auto& hi = *it;
      const auto& lo = *(it - 1);
      const double w = (x - lo.x) / (hi.x - lo.x);
      return lo.f + w * (hi.f - lo.f);
    }
  }
  return 0.0;
}

double ErrorDensity::cdf(double x) const {
  require_degree(x);
  switch (kind_) {
    case DensityKind::uniform:
      return 0.5 * (x + 1.0);
    case DensityKind::triangular:
      return x <= 0.0 ? 0.5 * (1.0 + x) * (1.0 + x) : 1.0 - 0.5 * (1.0 - x) * (1.0 - x);
    case DensityKind::tabulated:
      if (x <= -1.0) return 0.0;
      return adaptive_simpson([this](double u) { return pdf(u); }, -1.0, x);
  }
  return 0.0;
}

double ErrorDensity::integral_cdf(double t) const {
  require_degree(t);
  switch (kind_) {
    case DensityKind::uniform:
      return 0.25 * (1.0 + t) * (1.0 + t);
    case DensityKind::triangular: {
      if (t <= 0.0) {
        const double s = 1.0 + t;
        return s * s * s / 6.0;
      }
      const double s = 1.0 - t;
      return t + s * s * s / 6.0;
    }
    case DensityKind::tabulated:
      // integration by parts: int_{-1}^t F = t F(t) - int_{-1}^t x f(x) dx
      return t * cdf(t) - partial_x_moment(-1.0, t);
  }
  return 0.0;
}

double ErrorDensity::partial_x_moment(double a, double b) const {
  require_degree(a);
  require_degree(b);
  if (a > b) throw std::invalid_argument("partial_x_moment: a > b");
  switch (kind_) {
    case DensityKind::uniform:
      return 0.25 * (b * b - a * a);
    case DensityKind::triangular: {
      auto anti = [](double x) {  // int_0^x u (1-|u|) du
        return x >= 0.0 ? 0.5 * x * x - x * x * x / 3.0 : 0.5 * x * x + x * x * x / 3.0;
      };
      return anti(b) - anti(a);
    }
    case DensityKind::tabulated:
      if (a == b) return 0.0;
      return adaptive_simpson([this](double u) { return u * pdf(u); }, a, b);
  }
  return 0.0;
}

double ErrorDensity::sample(double u) const {
  if (!(u >= 0.0 && u <= 1.0))
    throw std::invalid_argument("sample: u outside [0, 1]");
  switch (kind_) {
    case DensityKind::uniform:
      return -1.0 + 2.0 * u;
    case DensityKind::triangular:
      return u <= 0.5 ? -1.0 + std::sqrt(2.0 * u) : 1.0 - std::sqrt(2.0 * (1.0 - u));
    case DensityKind::tabulated: {
      if (u <= 0.0) return -1.0;
      if (u >= 1.0) return 1.0;
      const auto it = std::upper_bound(cum_.begin(), cum_.end(), u);
      const std::size_t i = it == cum_.begin() ? 0 : std::size_t(it - cum_.begin()) - 1;
      if (i + 1 >= knots_.size()) return 1.0;
      const auto& lo = knots_[i];
      const auto& hi = knots_[i + 1];
      const double rem = u - cum_[i];
      const double slope = (hi.f - lo.f) / (hi.x - lo.x);
      // solve lo.f d + slope d^2 / 2 = rem for d in [0, hi.x - lo.x]
      const double disc = std::max(0.0, lo.f * lo.f + 2.0 * slope * rem);
      const double denom = lo.f + std::sqrt(disc);
      if (denom <= 0.0) return lo.x;  // zero-density stretch
      const double d = 2.0 * rem / denom;
      return std::min(lo.x + d, hi.x);
    }
  }
  return 0.0;
}

}  // namespace covenant
