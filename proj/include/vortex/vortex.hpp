#pragma once

#include "vortex/complex.hpp"
#include "vortex/conjugacy.hpp"
#include "vortex/decimal.hpp"
#include "vortex/dynamics.hpp"
#include "vortex/error.hpp"
#include "vortex/geometry.hpp"
#include "vortex/group.hpp"
#include "vortex/maps.hpp"
#include "vortex/rational.hpp"
#include "vortex/space.hpp"
#include "vortex/subset.hpp"
#include "vortex/workspace.hpp"
