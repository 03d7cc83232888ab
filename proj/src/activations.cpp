// SPDX-License-Identifier: Apache-2.0
#include "numlab/activations.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace numlab {

std::string to_string(Activation activation) {
  switch (activation) {
    case Activation::identity: return "identity";
    case Activation::tanh: return "tanh";
    case Activation::relu: return "relu";
    case Activation::gelu: return "gelu";
  }
  throw std::invalid_argument("unknown activation");
}

Activation activation_from_string(std::string_view name) {
  if (name == "identity") return Activation::identity;
  if (name == "tanh") return Activation::tanh;
  if (name == "relu") return Activation::relu;
  if (name == "gelu") return Activation::gelu;
  throw std::invalid_argument("unknown activation '" + std::string(name) + "'");
}

namespace {

double standard_normal_cdf(double z) {
  return 0.5 * std::erfc(-z / std::numbers::sqrt2);
}

double standard_normal_pdf(double z) {
  return std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi);
}

}  // namespace

double activate(Activation activation, double z) {
  switch (activation) {
    case Activation::identity: return z;
    case Activation::tanh: return std::tanh(z);
    case Activation::relu: return z > 0.0 ? z : 0.0;
    case Activation::gelu: return z * standard_normal_cdf(z);
  }
  throw std::invalid_argument("unknown activation");
}

double activate_derivative(Activation activation, double z) {
  switch (activation) {
    case Activation::identity: return 1.0;
    case Activation::tanh: {
      const double t = std::tanh(z);
      return 1.0 - t * t;
    }
    case Activation::relu: return z > 0.0 ? 1.0 : 0.0;
    case Activation::gelu:
      return standard_normal_cdf(z) + z * standard_normal_pdf(z);
  }
  throw std::invalid_argument("unknown activation");
}

bool strictly_monotone(Activation activation) {
  return activation == Activation::identity || activation == Activation::tanh;
}

bool in_open_range(Activation activation, double y) {
  switch (activation) {
    case Activation::identity: return std::isfinite(y);
    case Activation::tanh: return y > -1.0 && y < 1.0;
    case Activation::relu: return y >= 0.0;
    case Activation::gelu: return std::isfinite(y);
  }
  return false;
}

double activate_inverse(Activation activation, double y) {
  if (!strictly_monotone(activation)) {
    throw std::domain_error("activation '" + to_string(activation) + "' has no global inverse");
  }
  if (activation == Activation::identity) return y;
  if (!in_open_range(activation, y)) {
    throw std::out_of_range("value " + std::to_string(y) + " outside the tanh range (-1, 1)");
  }
  return std::atanh(y);
}

}  // namespace numlab
