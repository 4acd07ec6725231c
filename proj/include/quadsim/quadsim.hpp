#pragma once

#include "quadsim/errors.hpp"
#include "quadsim/geometry.hpp"
#include "quadsim/euler_kinematics.hpp"
#include "quadsim/vehicle.hpp"
#include "quadsim/rotor_model.hpp"
#include "quadsim/dynamics.hpp"
#include "quadsim/integrator.hpp"
#include "quadsim/scenario.hpp"
#include "quadsim/run.hpp"
