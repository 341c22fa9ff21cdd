#pragma once

#include "branespec/errors.hpp"
#include "branespec/exact.hpp"
#include "branespec/polyhedra.hpp"
#include "branespec/lattice_fan.hpp"
#include "branespec/standard_fans.hpp"
#include "branespec/toric_divisor.hpp"
#include "branespec/toric_cohomology.hpp"
#include "branespec/lie_theory.hpp"
#include "branespec/bbw_spectra.hpp"
#include "branespec/character_ring.hpp"
#include "branespec/equivariant_index.hpp"
