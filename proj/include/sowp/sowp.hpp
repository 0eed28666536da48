#pragma once

#include "analysis.hpp"
#include "amplitude.hpp"
#include "angular.hpp"
#include "densmat.hpp"
#include "dynamics.hpp"
#include "error.hpp"
#include "fit.hpp"
#include "pulse.hpp"
#include "quadrature.hpp"
#include "saddle.hpp"
#include "species.hpp"
#include "units.hpp"
