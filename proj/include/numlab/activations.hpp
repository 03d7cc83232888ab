// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <string_view>

namespace numlab {

enum class Activation { identity, tanh, relu, gelu };

std::string to_string(Activation activation);
Activation activation_from_string(std::string_view name);

double activate(Activation activation, double z);
double activate_derivative(Activation activation, double z);

/// True for identity and tanh; those are the activations with a global
/// inverse, which the analytic density path requires.
bool strictly_monotone(Activation activation);

/// Inverse of the activation; throws std::domain_error for relu/gelu and
/// std::out_of_range when y is outside the open range (|y| >= 1 for tanh).
double activate_inverse(Activation activation, double y);

/// Whether y lies in the open range of the activation (tanh: |y| < 1).
bool in_open_range(Activation activation, double y);

}  // namespace numlab
