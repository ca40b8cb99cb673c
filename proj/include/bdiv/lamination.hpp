#pragma once

// Exact external-angle pairs on the tree of iterated preimages of 1 under B,
// for a regular boundary divisor D = (B, S) with 1 outside supp(S).

#include <boost/multiprecision/cpp_int.hpp>
#include <complex>
#include <cstddef>
#include <iosfwd>
#include <utility>
#include <vector>

#include "bdiv/blaschke.hpp"
#include "bdiv/boundary.hpp"

namespace bdiv {

using Rational = boost::multiprecision::cpp_rational;

// Two circle points closer than this in angle are the same point.
inline constexpr double kAngleCollisionTol = 1e-12;

struct AngleEntry {
  cplx point;
  int level = 0;          // minimal k with B^k(point) = 1
  Rational theta_minus;   // turns, in [0, 1)
  Rational theta_plus;
  int nu = 0;             // multiplicity of S at point
  std::size_t parent = 0; // index of B(point) in the table; root points to itself
};

struct LaminationTable {
  std::vector<AngleEntry> entries;  // counterclockwise from 1
  int depth = 0;
  int d = 0;  // deg B + deg S
};

// The deg(B) solutions of B(z) = w on the circle, counterclockwise from 1.
std::vector<cplx> preimages_of(const BlaschkeProduct& b, cplx w);

LaminationTable lamination_table(const BoundaryDivisor& d, int depth);

// Leaves of the lamination: (theta_minus, theta_plus) for every entry with a
// nonzero gap, in table order.
std::vector<std::pair<Rational, Rational>> ray_pairs(const LaminationTable& t);

// point_re,point_im,level,theta_minus_num,theta_minus_den,theta_plus_num,theta_plus_den,nu
void write_csv(std::ostream& os, const LaminationTable& t);

// Angle of a circle point in turns, in [0, 1).
double turns_of(cplx z);

}  // namespace bdiv
