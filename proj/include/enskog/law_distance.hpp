#pragma once
// Dictionary distance between empirical laws: the supremum over smooth
// bounded test functions is approximated by a fixed deterministic family,
// all scaled to sup-norm 1. The reported value is the largest absolute
// difference of dictionary means; the error bar is a bootstrap standard
// error over member resampling.

#include "enskog/ensemble.hpp"

namespace enskog {

struct LawDistance {
    double value = 0.0;
    int test_family_size = 0;
    double standard_error = 0.0;
};

// Dictionary order (truncated to dictionary_size):
//   12 bounded moment coordinates: tanh(v_i/2), tanh(v_i v_j / 4) for the
//   six velocity second-moment pairs, tanh(x_i/4);
//   then cos/sin of (lambda, v) with lambda running over the axis points
//   a * e_i, a in {-2,-1,-0.5,0.5,1,2}, followed by the full grid
//   {-2,-1,-0.5,0.5,1,2}^3 in lexicographic order.
// Both ensembles are evaluated exactly at time t.
LawDistance law_distance(const Ensemble& a, const Ensemble& b, double t,
                         int dictionary_size = 64);

}  // namespace enskog
