#pragma once

#include "dispflow/errors.hpp"
#include "dispflow/sphere_geometry.hpp"
#include "dispflow/spectral.hpp"
#include "dispflow/discrete_curve.hpp"
#include "dispflow/rhs.hpp"
#include "dispflow/energy.hpp"
#include "dispflow/flow.hpp"
#include "dispflow/hasimoto_frame.hpp"
#include "dispflow/complex_flow.hpp"
