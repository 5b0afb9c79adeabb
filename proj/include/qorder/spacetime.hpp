#pragma once

#include <array>
#include <string>

namespace qorder {

/// Which local measurement's quantum jump precedes the other. Always an
/// input hypothesis: nothing in this library derives an OrderTag from
/// event coordinates, because no frame-independent time order exists for
/// causally separated events.
enum class OrderTag { l_first, r_first };

std::string to_string(OrderTag order);

/// A Minkowski event in natural units (c = 1), signature (+,-,-,-).
struct Event {
  double t = 0.0;
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  /// Validates finite coordinates.
  Event(double t, double x, double y, double z);
  Event() = default;
};

/// A pure Lorentz boost (no spatial rotation) followed by a constant
/// 4-vector offset: x' = Lambda x + a.
class Boost {
public:
  /// Requires |velocity| < 1 - 1e-12.
  explicit Boost(std::array<double, 3> velocity,
                 std::array<double, 4> offset = {0.0, 0.0, 0.0, 0.0});

  const std::array<double, 3>& velocity() const { return velocity_; }
  const std::array<double, 4>& offset() const { return offset_; }
  double speed() const;
  double gamma() const;

private:
  std::array<double, 3> velocity_;
  std::array<double, 4> offset_;
};

/// The invariant interval (dt)^2 - (dx)^2 - (dy)^2 - (dz)^2.
double interval(const Event& p, const Event& q);

/// True iff the interval is strictly spacelike (< 0). Lightlike pairs
/// count as causally connected: signals propagate on the cone.
bool causally_separated(const Event& p, const Event& q);

/// Applies the boost and offset to an event. Preserves intervals.
Event apply_boost(const Boost& b, const Event& p);

/// A boost whose frame reverses the time order of a spacelike pair: the
/// sign of t_p - t_q flips. Boost speed is an overshoot past |dt|/|dx|
/// along the spatial separation, deterministic in the inputs. For equal
/// fiducial times (degenerate input) any boost along the separation
/// produces a strict ordering; one is still returned. Throws NotSpacelike
/// for timelike or lightlike pairs, where no such boost exists.
Boost find_order_reversing_boost(const Event& p, const Event& q);

}  // namespace qorder
