#pragma once

#include "exmean/euclidean.hpp"
#include "exmean/geometry.hpp"
#include "exmean/grassmann.hpp"
#include "exmean/jacobi.hpp"
#include "exmean/projective.hpp"
#include "exmean/rng.hpp"
#include "exmean/samplers.hpp"
#include "exmean/simulate.hpp"
#include "exmean/sphere.hpp"
#include "exmean/svg.hpp"
#include "exmean/types.hpp"
