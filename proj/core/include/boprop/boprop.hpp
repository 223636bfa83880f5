#pragma once

#include "boprop/cutoff.hpp"
#include "boprop/datum.hpp"
#include "boprop/diagnostics.hpp"
#include "boprop/errors.hpp"
#include "boprop/evolution.hpp"
#include "boprop/grid.hpp"
#include "boprop/inequalities.hpp"
#include "boprop/pde.hpp"
#include "boprop/quadrature.hpp"
#include "boprop/spectral.hpp"
#include "boprop/version.hpp"
