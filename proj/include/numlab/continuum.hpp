// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include <Eigen/Dense>

#include "numlab/activations.hpp"
#include "numlab/table.hpp"

namespace numlab::continuum {

/// Two-timescale layer dynamics: fast relaxation
/// dz/dt = -alpha [z - f(W z - b)] integrated by explicit Euler from
/// z(0) = x to z(T), and slow gradient flow dW/dtau = -dL/dW on a toy loss.
struct ContinuumSpec {
  Eigen::MatrixXd weights;
  Eigen::VectorXd bias;
  Activation activation = Activation::tanh;
  double relaxation_alpha = 1.0;
  double horizon = 20.0;
  double fast_step = 0.05;
  double slow_step = 0.01;

  int dim() const { return static_cast<int>(weights.rows()); }
  void validate() const;  // requires fast_step * alpha < 2 (Euler stability)

  static ContinuumSpec scalar(double weight, Activation activation);
};

struct TrajectoryPoint {
  double t;
  Eigen::VectorXd z;
};
using Trajectory = std::vector<TrajectoryPoint>;

/// Regression batch with squared-error loss averaged over the batch.
struct ToyTask {
  std::vector<Eigen::VectorXd> inputs;
  std::vector<Eigen::VectorXd> targets;

  void validate() const;
};

struct TrainResult {
  ContinuumSpec spec;
  std::vector<double> loss_trace;  // steps + 1 entries; entry 0 is the initial loss
};

/// Fast dynamics: Euler steps from z(0)=x to z(T); the final state is the
/// output. Never mutates the spec. Throws InstabilityError (with the step)
/// if the state norm passes the overflow guard.
Trajectory relax(const ContinuumSpec& spec, const Eigen::VectorXd& x);

/// Output state only (last point of relax).
Eigen::VectorXd relax_output(const ContinuumSpec& spec, const Eigen::VectorXd& x);

/// Stationarity defect ||z - f(W z - b)||_2 of the fast dynamics.
double fixed_point_residual(const ContinuumSpec& spec, const Eigen::VectorXd& z);

/// Mean squared error of relax outputs against the task targets.
double batch_loss(const ContinuumSpec& spec, const ToyTask& task);

/// dL/dW by reverse accumulation through the unrolled Euler steps
/// (discretize-then-differentiate), W frozen during the fast pass.
Eigen::MatrixXd loss_gradient(const ContinuumSpec& spec, const ToyTask& task);

/// Slow dynamics: `steps` explicit gradient-flow updates
/// W <- W - slow_step * dL/dW.
TrainResult train(const ContinuumSpec& spec, const ToyTask& task, int steps);

/// CSV helpers: (t, z_0, ..., z_{N-1}) and (tau_step, loss).
ExperimentTable trajectory_table(const Trajectory& trajectory);
ExperimentTable loss_table(const std::vector<double>& loss_trace);

}  // namespace numlab::continuum
