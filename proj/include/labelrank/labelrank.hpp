#pragma once

// Umbrella header for the label-ranking toolkit.

#include "labelrank/errors.hpp"
#include "labelrank/harness.hpp"
#include "labelrank/learners.hpp"
#include "labelrank/ovo.hpp"
#include "labelrank/permutation.hpp"
#include "labelrank/rate_bound.hpp"
#include "labelrank/rng.hpp"
#include "labelrank/serialize.hpp"
#include "labelrank/synthetic.hpp"
