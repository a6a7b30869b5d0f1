#pragma once

// Rational instantiation of torsionlab: random complexes and witnesses for the
// property suites, and the text format read by the CLI.

#include <gmpxx.h>

#include <cstdint>
#include <istream>
#include <random>
#include <string>

#include "splice/torsionlab.hpp"

namespace splice::torsion {

using Rational = mpq_class;
using RationalComplex = BasedComplex<Rational>;
using RationalWitness = SesWitness<Rational>;

struct RandomShape {
  int max_length = 4;   // m is drawn from [0, max_length]
  int max_dim = 5;      // per-degree dimension bound, for the total complex of a witness as well
  int entry_bound = 3;  // random integer entries are drawn from [-entry_bound, entry_bound]
};

/// Complex with random integer boundaries of varying rank and a randomly
/// recombined homology basis.
RationalComplex random_complex(std::mt19937_64& rng, const RandomShape& shape = {});
RationalComplex random_complex_with_dims(std::mt19937_64& rng, const std::vector<std::size_t>& dims,
                                         const RandomShape& shape = {});

/// Random witness with a nonzero twist in most degrees, an invertible random
/// base change and a randomized homology basis of the total complex.
RationalWitness random_witness(std::mt19937_64& rng, const RandomShape& shape = {});

/// Valid but randomized b_i and homology lifts for `c`.
TorsionChoices<Rational> random_choices(std::mt19937_64& rng, const RationalComplex& c,
                                        const RandomShape& shape = {});

/// Reads the `complex m=<len>` format; SyntaxError carries the line number.
RationalComplex read_complex(std::istream& in);
RationalComplex read_complex_file(const std::string& path);
std::string write_complex(const RationalComplex& c);

std::string render(const Rational& q);

}  // namespace splice::torsion
