#pragma once
// Umbrella header: pulls in the whole toolbox.

#include "entlab/basis.hpp"
#include "entlab/density.hpp"
#include "entlab/dynamics.hpp"
#include "entlab/eig.hpp"
#include "entlab/entangle.hpp"
#include "entlab/errors.hpp"
#include "entlab/io/config.hpp"
#include "entlab/io/csv.hpp"
#include "entlab/io/svg.hpp"
#include "entlab/mat4.hpp"
#include "entlab/model.hpp"
#include "entlab/optimize.hpp"
#include "entlab/physical.hpp"
#include "entlab/states.hpp"
#include "entlab/stationary.hpp"
#include "entlab/sweep.hpp"
