#pragma once

#include "nerf/analytic_bounds.hpp"
#include "nerf/dense_matrix.hpp"
#include "nerf/erasure.hpp"
#include "nerf/json_io.hpp"
#include "nerf/matrix_io.hpp"
#include "nerf/random_matrix.hpp"
#include "nerf/rng.hpp"
#include "nerf/singular_values.hpp"
#include "nerf/sweep.hpp"
#include "nerf/types.hpp"
#include "nerf/validation.hpp"
