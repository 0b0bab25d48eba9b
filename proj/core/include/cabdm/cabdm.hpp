#pragma once

#include "cabdm/baselines.hpp"
#include "cabdm/bdm.hpp"
#include "cabdm/ca.hpp"
#include "cabdm/collision.hpp"
#include "cabdm/ctm.hpp"
#include "cabdm/error.hpp"
#include "cabdm/output.hpp"
#include "cabdm/perturbation.hpp"
#include "cabdm/rng.hpp"
