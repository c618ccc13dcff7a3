#include "affine/io.hpp"

#include <cstdio>
#include <fstream>

namespace affine {

std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

void write_trajectory_csv(const std::string& path, const Trajectory& traj) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open " + path + " for writing");
  out << "t";
  for (int i = 1; i <= 3; ++i)
    for (int j = 1; j <= 3; ++j) out << ",A" << i << j;
  for (int i = 1; i <= 3; ++i)
    for (int j = 1; j <= 3; ++j) out << ",Ad" << i << j;
  out << ",E,E_K,E_P,kappa,det,trL,lambda1,lambda2,lambda3\n";
  for (const Sample& s : traj.samples) {
    out << fmt17(s.t);
    for (double v : s.A.m) out << ',' << fmt17(v);
    for (double v : s.A_dot.m) out << ',' << fmt17(v);
    out << ',' << fmt17(s.diag.energy) << ',' << fmt17(s.diag.kinetic) << ','
        << fmt17(s.diag.potential) << ',' << fmt17(s.diag.kappa) << ',' << fmt17(s.diag.det)
        << ',' << fmt17(s.diag.trace_L);
    for (double v : s.diag.axes) out << ',' << fmt17(v);
    out << '\n';
  }
}

}  // namespace affine
