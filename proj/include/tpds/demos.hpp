#pragma once

#include "tpds/nonlinear.hpp"
#include "tpds/system.hpp"

namespace tpds::demos {

/// C on [0, 1/4], the t-weighted tridiagonal pattern on [1/4, 1/2], C' on [1/2, 1].
TimeVaryingSystem switched();
Matrix switched_C();
Vector switched_z0();  // (-1, 5, -13, 17)

/// A(t) = [[0, t], [t, 0]] on [a, b].
TimeVaryingSystem cosh2(double a = 0.0, double b = 1.0);

/// A(t) = [[0, 1 + sin t], [1 + sin t, 0]], period 2 pi.
TimeVaryingSystem sinusoidal2();

/// 3x3 periodic system with the solution (2 + cos t, -sin t, -2 + cos t).
TimeVaryingSystem schwarz3();

/// 4-dimensional cyclic cooperative system with input cos 2t, period pi. Not tridiagonal.
NonlinearSystem takac();
/// (cos t, sin t, -cos t, -sin t).
Vector takac_gamma(double t);
Vector takac_gamma_dot(double t);

/// x_i' = -x_i + tanh(x_{i-1}) + tanh(x_{i+1}) + (i == 1 ? sin(2 pi t / T) : 0) on [-3, 3]^n.
NonlinearSystem entrain(int n = 3, double period = 6.283185307179586);

/// Autonomous variant of the entrainment demo with constant biases, Jacobian by finite differences.
NonlinearSystem logistic3();

}  // namespace tpds::demos
