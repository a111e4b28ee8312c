#pragma once

#include "mixcheck/analytic.hpp"
#include "mixcheck/critical_values.hpp"
#include "mixcheck/errors.hpp"
#include "mixcheck/matrices.hpp"
#include "mixcheck/mixing_test.hpp"
#include "mixcheck/parallel.hpp"
#include "mixcheck/protocols.hpp"
#include "mixcheck/rng_dist.hpp"
#include "mixcheck/serialize.hpp"
#include "mixcheck/spectra.hpp"
#include "mixcheck/ulam.hpp"
