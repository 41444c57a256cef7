#pragma once

// Umbrella header.

#include "evoreg/coefficients.hpp"
#include "evoreg/config.hpp"
#include "evoreg/errors.hpp"
#include "evoreg/evo_solver.hpp"
#include "evoreg/fourier_laplace.hpp"
#include "evoreg/fractional_calculus.hpp"
#include "evoreg/maxreg_diagnostics.hpp"
#include "evoreg/numerics.hpp"
#include "evoreg/report.hpp"
#include "evoreg/scenarios.hpp"
#include "evoreg/signals.hpp"
#include "evoreg/spatial_operators.hpp"
#include "evoreg/suites.hpp"
#include "evoreg/weighted_space.hpp"
