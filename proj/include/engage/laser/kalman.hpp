#pragma once

#include <Eigen/Dense>
#include <optional>

namespace engage::laser {

struct KalmanConfig {
  double dt = 0.080;
  double accel_noise = 2.0;        // white-acceleration sigma, m/s^2
  double measurement_noise = 0.05; // position sigma, m
  double init_velocity_var = 1.0;
};

// Constant-velocity filter over [x, y, dx, dy]. Covariance is re-symmetrized
// and eigenvalue-floored after every step; repairs are counted as warnings.
class FootKalman {
 public:
  FootKalman(double x, double y, const KalmanConfig& config = {});

  void predict();
  void update(double mx, double my);

  // predict + optional update in one call.
  void step(std::optional<Eigen::Vector2d> measurement);

  Eigen::Vector2d position() const { return state_.head<2>(); }
  Eigen::Vector2d velocity() const { return state_.tail<2>(); }
  const Eigen::Vector4d& state() const { return state_; }
  const Eigen::Matrix4d& covariance() const { return cov_; }
  int psd_repairs() const { return psd_repairs_; }

 private:
  void enforce_psd();

  KalmanConfig config_;
  Eigen::Vector4d state_;
  Eigen::Matrix4d cov_;
  Eigen::Matrix4d transition_;
  Eigen::Matrix4d process_noise_;
  int psd_repairs_ = 0;
};

}  // namespace engage::laser
