#pragma once

// Numerical library for i u_t - mu u_xx + u_xxxx = 0 on a periodic line.
// The command line layer lives in fourthlab/cli.hpp and needs CLI11.

#include "fourthlab/errors.hpp"
#include "fourthlab/grid.hpp"
#include "fourthlab/spectral.hpp"
#include "fourthlab/quadrature.hpp"
#include "fourthlab/whitney.hpp"
#include "fourthlab/refined.hpp"
#include "fourthlab/bubbles.hpp"
#include "fourthlab/scenarios.hpp"
#include "fourthlab/extremal.hpp"
#include "fourthlab/io.hpp"
