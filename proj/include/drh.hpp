#pragma once

#include "drh/bump.hpp"
#include "drh/c_function.hpp"
#include "drh/csv.hpp"
#include "drh/errors.hpp"
#include "drh/experiments.hpp"
#include "drh/geometry.hpp"
#include "drh/grids.hpp"
#include "drh/parallel.hpp"
#include "drh/phase.hpp"
#include "drh/propagator.hpp"
#include "drh/quadrature.hpp"
#include "drh/report.hpp"
#include "drh/special.hpp"
#include "drh/spherical.hpp"
#include "drh/transforms.hpp"
