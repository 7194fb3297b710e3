#pragma once

// Umbrella header: enumeration and classification of plumbers' knots.

#include "plumber/rational.hpp"
#include "plumber/permutation.hpp"
#include "plumber/cell.hpp"
#include "plumber/curve.hpp"
#include "plumber/singularity.hpp"
#include "plumber/isotopy.hpp"
#include "plumber/geometry.hpp"
#include "plumber/lattice.hpp"
#include "plumber/diagram.hpp"
#include "plumber/invariants.hpp"
#include "plumber/serialize.hpp"
