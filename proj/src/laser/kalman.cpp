#include "engage/laser/kalman.hpp"

namespace engage::laser {

FootKalman::FootKalman(double x, double y, const KalmanConfig& config) : config_(config) {
  const double dt = config.dt;
  state_ << x, y, 0.0, 0.0;

  transition_ = Eigen::Matrix4d::Identity();
  transition_(0, 2) = dt;
  transition_(1, 3) = dt;

  const double s2 = config.accel_noise * config.accel_noise;
  const double q11 = s2 * dt * dt * dt * dt / 4.0;
  const double q13 = s2 * dt * dt * dt / 2.0;
  const double q33 = s2 * dt * dt;
  process_noise_.setZero();
  process_noise_(0, 0) = q11;
  process_noise_(1, 1) = q11;
  process_noise_(0, 2) = process_noise_(2, 0) = q13;
  process_noise_(1, 3) = process_noise_(3, 1) = q13;
  process_noise_(2, 2) = q33;
  process_noise_(3, 3) = q33;

  const double m2 = config.measurement_noise * config.measurement_noise;
  cov_.setZero();
  cov_(0, 0) = cov_(1, 1) = m2;
  cov_(2, 2) = cov_(3, 3) = config.init_velocity_var;
}

void FootKalman::predict() {
  state_ = transition_ * state_;
  cov_ = transition_ * cov_ * transition_.transpose() + process_noise_;
  enforce_psd();
}

void FootKalman::update(double mx, double my) {
  Eigen::Matrix<double, 2, 4> H = Eigen::Matrix<double, 2, 4>::Zero();
  H(0, 0) = 1.0;
  H(1, 1) = 1.0;
  const double m2 = config_.measurement_noise * config_.measurement_noise;
  const Eigen::Matrix2d R = Eigen::Matrix2d::Identity() * m2;

  const Eigen::Vector2d innovation(mx - state_(0), my - state_(1));
  const Eigen::Matrix2d S = H * cov_ * H.transpose() + R;
  const Eigen::Matrix<double, 4, 2> K = cov_ * H.transpose() * S.inverse();
  state_ += K * innovation;
  const Eigen::Matrix4d I = Eigen::Matrix4d::Identity();
  // Joseph form keeps the covariance update numerically symmetric.
  const Eigen::Matrix4d A = I - K * H;
  cov_ = A * cov_ * A.transpose() + K * R * K.transpose();
  enforce_psd();
}

void FootKalman::step(std::optional<Eigen::Vector2d> measurement) {
  predict();
  if (measurement) update(measurement->x(), measurement->y());
}

void FootKalman::enforce_psd() {
  cov_ = ((cov_ + cov_.transpose()) * 0.5).eval();
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> es(cov_);
  if (es.eigenvalues().minCoeff() < 0.0) {
    Eigen::Vector4d clamped = es.eigenvalues().cwiseMax(0.0);
    cov_ = es.eigenvectors() * clamped.asDiagonal() * es.eigenvectors().transpose();
    ++psd_repairs_;
  }
}

}  // namespace engage::laser
