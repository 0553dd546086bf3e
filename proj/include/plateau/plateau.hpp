#pragma once

#include "core/bitstring.hpp"
#include "core/combinatorics.hpp"
#include "core/numeric.hpp"
#include "core/rng.hpp"
#include "core/sampling.hpp"
#include "ea.hpp"
#include "fitness.hpp"
#include "harness/csv.hpp"
#include "harness/experiments.hpp"
#include "harness/format.hpp"
#include "harness/parallel.hpp"
#include "harness/stats.hpp"
#include "harness/svg.hpp"
#include "oracle/birth_death.hpp"
#include "oracle/checks.hpp"
#include "oracle/kernel.hpp"
#include "theory.hpp"
