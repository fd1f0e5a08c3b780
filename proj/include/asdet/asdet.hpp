#pragma once

#include "asdet/cpoly.hpp"
#include "asdet/determinant.hpp"
#include "asdet/errors.hpp"
#include "asdet/probe.hpp"
#include "asdet/rootsys.hpp"
#include "asdet/scaled_complex.hpp"
#include "asdet/simplex.hpp"
#include "asdet/spinorgeom.hpp"
