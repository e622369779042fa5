#pragma once

#include "errors.hpp"
#include "random.hpp"
#include "lattice.hpp"
#include "domain.hpp"
#include "transform.hpp"
#include "inequalities.hpp"
#include "multiplier.hpp"
#include "io.hpp"
#include "experiments.hpp"
