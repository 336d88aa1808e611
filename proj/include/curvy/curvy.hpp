#pragma once

// Umbrella header.

#include "curvy/aqm/codel.hpp"
#include "curvy/aqm/convex_red.hpp"
#include "curvy/aqm/marking.hpp"
#include "curvy/aqm/pi_controller.hpp"
#include "curvy/aqm/probability.hpp"
#include "curvy/aqm/soft_target.hpp"
#include "curvy/cli/curve.hpp"
#include "curvy/cli/kv_file.hpp"
#include "curvy/cli/scenario_file.hpp"
#include "curvy/cli/sweep.hpp"
#include "curvy/metrics/csv.hpp"
#include "curvy/metrics/summary.hpp"
#include "curvy/metrics/trace.hpp"
#include "curvy/random.hpp"
#include "curvy/scenario.hpp"
#include "curvy/sim/simulator.hpp"
#include "curvy/traffic/fluid.hpp"
#include "curvy/traffic/reno.hpp"
