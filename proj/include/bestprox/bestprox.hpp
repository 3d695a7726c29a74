#pragma once

#include "bestprox/errors.hpp"
#include "bestprox/metric.hpp"
#include "bestprox/f_family.hpp"
#include "bestprox/proximity.hpp"
#include "bestprox/mapping.hpp"
#include "bestprox/contraction.hpp"
#include "bestprox/solver.hpp"
#include "bestprox/scenario.hpp"
#include "bestprox/runner.hpp"
