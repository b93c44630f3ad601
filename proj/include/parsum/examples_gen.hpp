#pragma once

#include "parsum/perturbation.hpp"

namespace parsum::demo {

// 2x2 family with cos(t) on the diagonal and sign * sin(t)/4 off it;
// positive definite for t in (0, pi/2).
PsdMatrix coupled(double t, int sign);

// Rank-1 orthogonal projector onto span{(cos a, -sin a)}.
PsdMatrix line_projector(double angle);

// Demo problem 1: base pair coupled(t_base, +1) / coupled(t_base, -1),
// perturbations taken as differences toward t_a and t_b. All four matrices
// are positive definite at the default angles.
PerturbationProblem problem1(double t_base, double t_a, double t_b);
PerturbationProblem problem1();

// Demo problem 2: four line projectors.
PerturbationProblem problem2(double t1, double t2, double t3, double t4);
PerturbationProblem problem2();

}  // namespace parsum::demo
