// SPDX-License-Identifier: Apache-2.0
#include "numlab/continuum.hpp"

#include <cmath>
#include <stdexcept>

#include "numlab/errors.hpp"

namespace numlab::continuum {

namespace {

constexpr double kOverflowGuard = 1e12;

long step_count(const ContinuumSpec& spec) {
  const long steps = std::lround(spec.horizon / spec.fast_step);
  return steps < 1 ? 1 : steps;
}

Eigen::VectorXd activate_vector(Activation activation, const Eigen::VectorXd& u) {
  Eigen::VectorXd out(u.size());
  for (Eigen::Index i = 0; i < u.size(); ++i) out[i] = activate(activation, u[i]);
  return out;
}

}  // namespace

void ContinuumSpec::validate() const {
  if (weights.rows() == 0 || weights.rows() != weights.cols()) {
    throw std::invalid_argument("weight matrix must be square and non-empty");
  }
  if (bias.size() != weights.rows()) {
    throw std::invalid_argument("bias dimension does not match the weight matrix");
  }
  if (!(relaxation_alpha > 0.0)) throw std::domain_error("relaxation rate must be positive");
  if (!(horizon > 0.0)) throw std::domain_error("horizon must be positive");
  if (!(fast_step > 0.0)) throw std::domain_error("fast step must be positive");
  if (!(slow_step > 0.0)) throw std::domain_error("slow step must be positive");
  if (!(fast_step * relaxation_alpha < 2.0)) {
    throw std::domain_error("fast_step * alpha must stay below 2 for Euler stability");
  }
}

ContinuumSpec ContinuumSpec::scalar(double weight, Activation activation) {
  ContinuumSpec spec;
  spec.weights = Eigen::MatrixXd::Constant(1, 1, weight);
  spec.bias = Eigen::VectorXd::Zero(1);
  spec.activation = activation;
  return spec;
}

void ToyTask::validate() const {
  if (inputs.empty() || inputs.size() != targets.size()) {
    throw std::invalid_argument("task needs non-empty input/target batches of equal length");
  }
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    if (inputs[i].size() != targets[i].size()) {
      throw std::invalid_argument("input/target dimension mismatch in the batch");
    }
  }
}

Trajectory relax(const ContinuumSpec& spec, const Eigen::VectorXd& x) {
  spec.validate();
  if (x.size() != spec.weights.rows()) {
    throw std::invalid_argument("state dimension does not match the spec");
  }
  const long steps = step_count(spec);
  const double dt = spec.fast_step;
  const double alpha = spec.relaxation_alpha;

  Trajectory trajectory;
  trajectory.reserve(static_cast<std::size_t>(steps) + 1);
  Eigen::VectorXd z = x;
  trajectory.push_back({0.0, z});
  for (long k = 0; k < steps; ++k) {
    const Eigen::VectorXd fz = activate_vector(spec.activation, spec.weights * z - spec.bias);
    z += dt * (-alpha) * (z - fz);
    if (!z.allFinite() || z.norm() > kOverflowGuard) {
      throw InstabilityError(static_cast<std::size_t>(k + 1),
                             "relaxation diverged at step " + std::to_string(k + 1));
    }
    trajectory.push_back({dt * static_cast<double>(k + 1), z});
  }
  return trajectory;
}

Eigen::VectorXd relax_output(const ContinuumSpec& spec, const Eigen::VectorXd& x) {
  return relax(spec, x).back().z;
}

double fixed_point_residual(const ContinuumSpec& spec, const Eigen::VectorXd& z) {
  spec.validate();
  if (z.size() != spec.weights.rows()) {
    throw std::invalid_argument("state dimension does not match the spec");
  }
  const Eigen::VectorXd fz = activate_vector(spec.activation, spec.weights * z - spec.bias);
  return (z - fz).norm();
}

double batch_loss(const ContinuumSpec& spec, const ToyTask& task) {
  task.validate();
  double loss = 0.0;
  for (std::size_t b = 0; b < task.inputs.size(); ++b) {
    loss += (relax_output(spec, task.inputs[b]) - task.targets[b]).squaredNorm();
  }
  return loss / static_cast<double>(task.inputs.size());
}

Eigen::MatrixXd loss_gradient(const ContinuumSpec& spec, const ToyTask& task) {
  spec.validate();
  task.validate();
  const long steps = step_count(spec);
  const double dt = spec.fast_step;
  const double alpha = spec.relaxation_alpha;
  const double batch = static_cast<double>(task.inputs.size());

  Eigen::MatrixXd grad = Eigen::MatrixXd::Zero(spec.weights.rows(), spec.weights.cols());
  for (std::size_t b = 0; b < task.inputs.size(); ++b) {
    // Forward pass, storing the trajectory.
    const Trajectory trajectory = relax(spec, task.inputs[b]);

    // Reverse accumulation through z_{k+1} = (1 - a dt) z_k + a dt f(W z_k - b).
    Eigen::VectorXd adjoint =
        2.0 / batch * (trajectory.back().z - task.targets[b]);
    for (long k = steps - 1; k >= 0; --k) {
      const Eigen::VectorXd& z = trajectory[static_cast<std::size_t>(k)].z;
      const Eigen::VectorXd u = spec.weights * z - spec.bias;
      Eigen::VectorXd gated(u.size());
      for (Eigen::Index i = 0; i < u.size(); ++i) {
        gated[i] = activate_derivative(spec.activation, u[i]) * adjoint[i];
      }
      grad += (alpha * dt) * gated * z.transpose();
      adjoint = (1.0 - alpha * dt) * adjoint + (alpha * dt) * spec.weights.transpose() * gated;
    }
  }
  return grad;
}

TrainResult train(const ContinuumSpec& spec, const ToyTask& task, int steps) {
  if (steps < 1) throw std::invalid_argument("training needs at least one step");
  TrainResult result;
  result.spec = spec;
  result.loss_trace.reserve(static_cast<std::size_t>(steps) + 1);
  result.loss_trace.push_back(batch_loss(result.spec, task));
  for (int s = 0; s < steps; ++s) {
    const Eigen::MatrixXd grad = loss_gradient(result.spec, task);
    result.spec.weights -= result.spec.slow_step * grad;
    result.loss_trace.push_back(batch_loss(result.spec, task));
  }
  return result;
}

ExperimentTable trajectory_table(const Trajectory& trajectory) {
  if (trajectory.empty()) throw std::invalid_argument("trajectory is empty");
  std::vector<Column> columns{{"t", "fast_time"}};
  for (Eigen::Index i = 0; i < trajectory.front().z.size(); ++i) {
    columns.push_back({"z_" + std::to_string(i), "1"});
  }
  ExperimentTable table(std::move(columns));
  for (const auto& point : trajectory) {
    std::vector<Cell> row;
    row.emplace_back(point.t);
    for (Eigen::Index i = 0; i < point.z.size(); ++i) row.emplace_back(point.z[i]);
    table.add_row(std::move(row));
  }
  return table;
}

ExperimentTable loss_table(const std::vector<double>& loss_trace) {
  if (loss_trace.empty()) throw std::invalid_argument("loss trace is empty");
  ExperimentTable table({{"tau_step", "count"}, {"loss", "1"}});
  for (std::size_t i = 0; i < loss_trace.size(); ++i) {
    table.add_row({static_cast<double>(i), loss_trace[i]});
  }
  return table;
}

}  // namespace numlab::continuum
