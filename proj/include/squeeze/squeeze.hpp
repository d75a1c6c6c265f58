#pragma once

#include "squeeze/airy.hpp"
#include "squeeze/asymptotic.hpp"
#include "squeeze/config.hpp"
#include "squeeze/convergence.hpp"
#include "squeeze/errors.hpp"
#include "squeeze/io.hpp"
#include "squeeze/point_limits.hpp"
#include "squeeze/potential.hpp"
#include "squeeze/resonance.hpp"
#include "squeeze/scattering.hpp"
#include "squeeze/sweep.hpp"
#include "squeeze/templates.hpp"
#include "squeeze/transfer_matrix.hpp"
