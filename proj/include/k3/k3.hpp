#pragma once

// Umbrella header for the whole library.

#include "k3/brauer.hpp"
#include "k3/divisor.hpp"
#include "k3/errors.hpp"
#include "k3/fpfactor.hpp"
#include "k3/homopoly.hpp"
#include "k3/integers.hpp"
#include "k3/localfields.hpp"
#include "k3/pipeline.hpp"
#include "k3/pointsearch.hpp"
#include "k3/resultant.hpp"
#include "k3/smoothness.hpp"
#include "k3/sod.hpp"
#include "k3/upoly.hpp"
