#pragma once

// Umbrella header.

#include "mmi/rational.hpp"
#include "mmi/error.hpp"
#include "mmi/dual_graph.hpp"
#include "mmi/divisor.hpp"
#include "mmi/resolution.hpp"
#include "mmi/mixed_ideal.hpp"
#include "mmi/geometry2d.hpp"
#include "mmi/region.hpp"
#include "mmi/enumeration.hpp"
#include "mmi/jumping_divisor.hpp"
#include "mmi/json_io.hpp"
#include "mmi/svg.hpp"
#include "mmi/cli.hpp"
