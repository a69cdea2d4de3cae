#include "maneuver/model/plant.hpp"

#include <cmath>
#include <stdexcept>

namespace maneuver {

void VehicleParams::validate() const {
  if (!(cornering_front > 0 && cornering_rear > 0 && dist_front > 0 &&
        dist_rear > 0 && mass > 0 && yaw_inertia > 0))
    throw std::invalid_argument("vehicle parameters must be strictly positive");
}

VehicleParams VehicleParams::swapped() const {
  VehicleParams out = *this;
  std::swap(out.cornering_front, out.cornering_rear);
  std::swap(out.dist_front, out.dist_rear);
  return out;
}

PlantModel assemble_model(const VehicleParams& params, double speed,
                          double preview, Direction direction) {
  params.validate();
  if (!(speed >= kModelSpeedFloor))
    throw std::invalid_argument("plant: speed below the model floor");
  if (preview < 0.0) throw std::invalid_argument("plant: negative preview");

  const VehicleParams p =
      direction == Direction::backward ? params.swapped() : params;
  const double cf = p.cornering_front, cr = p.cornering_rear;
  const double lf = p.dist_front, lr = p.dist_rear;
  const double mass = p.mass, iz = p.yaw_inertia;
  const double v = speed, ls = preview;

  PlantModel plant;
  plant.speed = v;
  plant.preview = ls;
  plant.direction = direction;

  plant.a << (-cf - cr) / (mass * v), -1.0 + (cr * lr - cf * lf) / (mass * v * v), 0.0, 0.0,
             (cr * lr - cf * lf) / iz, (-cf * lf * lf - cr * lr * lr) / (iz * v), 0.0, 0.0,
             0.0, 1.0, 0.0, 0.0,
             v, ls, v, 0.0;

  const Eigen::Vector4d b_front(cf / (mass * v), cf * lf / iz, 0.0, 0.0);
  const Eigen::Vector4d b_rear(cr / (mass * v), cr * lr / iz, 0.0, 0.0);
  // Backward motion steers the (model) rear axle.
  plant.b_steer = direction == Direction::forward ? b_front : b_rear;
  plant.b_curvature << 0.0, 0.0, -v, -ls * v;
  plant.b_yaw_moment << 0.0, 1.0 / iz, 0.0, 0.0;
  return plant;
}

RationalTF steering_to_error_tf(const PlantModel& plant) {
  constexpr int n = 4;
  Eigen::Matrix4d a = plant.a;
  Eigen::Vector4d b = plant.b_steer;
  Eigen::RowVector4d c = Eigen::RowVector4d::Zero();
  c(3) = 1.0;  // measure e_y

  // Power-of-two diagonal balancing to tame the entry spread before the
  // characteristic-polynomial recursion.
  for (int iter = 0; iter < 10; ++iter) {
    bool converged = true;
    for (int i = 0; i < n; ++i) {
      double r = a.row(i).cwiseAbs().sum() - std::abs(a(i, i));
      double col = a.col(i).cwiseAbs().sum() - std::abs(a(i, i));
      if (r == 0.0 || col == 0.0) continue;
      double f = 1.0;
      while (col < r / 2.0) { col *= 2.0; r /= 2.0; f *= 2.0; }
      while (col > r * 2.0) { col /= 2.0; r *= 2.0; f /= 2.0; }
      if (f != 1.0) {
        converged = false;
        a.row(i) /= f;
        a.col(i) *= f;
        b(i) /= f;
        c(i) *= f;
      }
    }
    if (converged) break;
  }

  // Faddeev-LeVerrier: adj(sI - A) = sum_k M_k s^(n-1-k), char poly
  // coefficients alongside.
  Poly den(n + 1);
  den[0] = 1.0;
  Eigen::Matrix4d mk = Eigen::Matrix4d::Identity();
  Poly num = Poly::Zero(n);  // degree n-1 at most
  num[0] = (c * mk * b).value();
  for (int k = 1; k <= n; ++k) {
    const Eigen::Matrix4d am = a * mk;
    den[k] = -am.trace() / k;
    if (k < n) {
      mk = am + den[k] * Eigen::Matrix4d::Identity();
      num[k] = (c * mk * b).value();
    }
  }
  if (!num.allFinite() || !den.allFinite())
    throw std::runtime_error("tf extraction: non-finite recursion result");
  // The heading/offset integrators never feed back into (beta, r): A is
  // block lower-triangular, so the characteristic polynomial factors exactly
  // as s^2 times the chassis block's. Assemble the denominator from that
  // block so the trailing zeros are exact instead of rounding residue.
  const double tr = plant.a(0, 0) + plant.a(1, 1);
  const double det =
      plant.a(0, 0) * plant.a(1, 1) - plant.a(0, 1) * plant.a(1, 0);
  den.setZero();
  den[0] = 1.0;
  den[1] = -tr;
  den[2] = det;
  return RationalTF(num, den);
}

}  // namespace maneuver
