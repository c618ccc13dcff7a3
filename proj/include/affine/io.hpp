#pragma once

#include <string>

#include "affine/dynamics.hpp"

namespace affine {

/// Shortest decimal string that round-trips a double (17 significant digits).
std::string fmt17(double x);

/// Fixed-column trajectory export:
/// t, A (9), A' (9), E, E_K, E_P, kappa, det, trL, lambda1..lambda3.
void write_trajectory_csv(const std::string& path, const Trajectory& traj);

}  // namespace affine
