#include "qorder/spacetime.hpp"

#include <cmath>

#include "qorder/errors.hpp"

namespace qorder {

namespace {

constexpr double kSpeedCap = 1.0 - 1e-12;

}  // namespace

std::string to_string(OrderTag order) {
  return order == OrderTag::l_first ? "l-first" : "r-first";
}

Event::Event(double t, double x, double y, double z) : t(t), x(x), y(y), z(z) {
  if (!std::isfinite(t) || !std::isfinite(x) || !std::isfinite(y) ||
      !std::isfinite(z)) {
    throw InvalidArgument("Event: non-finite coordinate");
  }
}

Boost::Boost(std::array<double, 3> velocity, std::array<double, 4> offset)
    : velocity_(velocity), offset_(offset) {
  if (speed() >= kSpeedCap) {
    throw InvalidArgument("Boost: |v| = " + std::to_string(speed()) +
                          " not strictly below 1");
  }
  for (double a : offset_) {
    if (!std::isfinite(a)) {
      throw InvalidArgument("Boost: non-finite offset");
    }
  }
}

double Boost::speed() const {
  return std::sqrt(velocity_[0] * velocity_[0] + velocity_[1] * velocity_[1] +
                   velocity_[2] * velocity_[2]);
}

double Boost::gamma() const {
  const double v = speed();
  return 1.0 / std::sqrt(1.0 - v * v);
}

double interval(const Event& p, const Event& q) {
  const double dt = p.t - q.t;
  const double dx = p.x - q.x;
  const double dy = p.y - q.y;
  const double dz = p.z - q.z;
  return dt * dt - dx * dx - dy * dy - dz * dz;
}

bool causally_separated(const Event& p, const Event& q) {
  return interval(p, q) < 0.0;
}

Event apply_boost(const Boost& b, const Event& p) {
  const auto& v = b.velocity();
  const double v2 = v[0] * v[0] + v[1] * v[1] + v[2] * v[2];
  const auto& a = b.offset();
  if (v2 == 0.0) {
    return Event(p.t + a[0], p.x + a[1], p.y + a[2], p.z + a[3]);
  }
  const double g = b.gamma();
  const double vdotx = v[0] * p.x + v[1] * p.y + v[2] * p.z;
  // Pure boost: t' = g (t - v.x); x' = x + ((g-1) v.x / v^2 - g t) v.
  const double t1 = g * (p.t - vdotx);
  const double coef = (g - 1.0) * vdotx / v2 - g * p.t;
  return Event(t1 + a[0], p.x + coef * v[0] + a[1], p.y + coef * v[1] + a[2],
               p.z + coef * v[2] + a[3]);
}

Boost find_order_reversing_boost(const Event& p, const Event& q) {
  if (!causally_separated(p, q)) {
    throw NotSpacelike("find_order_reversing_boost: interval " +
                       std::to_string(interval(p, q)) + " is not spacelike");
  }
  const double dt = p.t - q.t;
  const double sep[3] = {p.x - q.x, p.y - q.y, p.z - q.z};
  const double dist =
      std::sqrt(sep[0] * sep[0] + sep[1] * sep[1] + sep[2] * sep[2]);
  // Spacelike guarantees dist > |dt|, so the ratio is in [0, 1).
  const double ratio = std::abs(dt) / dist;
  // Overshoot the ratio by half, switching to the midpoint with 1 where
  // that would leave the subluminal range.
  double speed = std::min(1.5 * ratio, 0.5 * (1.0 + ratio));
  if (dt == 0.0) {
    speed = 0.5;  // degenerate input: any subluminal speed gives a strict order
  }
  // Boost along +sep lowers the time difference; flip for dt < 0.
  const double direction = (dt < 0.0) ? -1.0 : 1.0;
  const double scale = direction * speed / dist;
  return Boost({scale * sep[0], scale * sep[1], scale * sep[2]});
}

}  // namespace qorder
