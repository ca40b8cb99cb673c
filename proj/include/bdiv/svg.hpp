#pragma once

// SVG figures on the unit disk: radius 256 px, counterclockwise positive.

#include <string>

#include "bdiv/divisor.hpp"
#include "bdiv/lamination.hpp"

namespace bdiv::svg {

struct Options {
  bool deterministic = false;  // omit the generation timestamp
};

// Zeros (filled dots), critical points (crosses) and the hyperbolic hull of
// the zeros together with 0 when include_origin is set.
std::string critical_figure(const Divisor& zeros, const Divisor& critical,
                            bool include_origin, const Options& opts);

// Chords between e^{2 pi i theta-} and e^{2 pi i theta+} for every leaf, plus
// the tabulated preimage points.
std::string lamination_figure(const LaminationTable& t, const Options& opts);

// Atoms of an arbitrary divisor: interior atoms as dots, circle atoms as rings.
std::string divisor_figure(const Divisor& d, const Options& opts);

}  // namespace bdiv::svg
