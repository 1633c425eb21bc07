#pragma once

// Umbrella header: explicit similarity solutions of the two-phase
// binary-alloy solidification problem with heat-flux, convective or
// fixed-temperature conditions at the fixed face, plus the admissibility
// gates, verification machinery and file-format helpers.

#include "alloystef/cli.hpp"
#include "alloystef/config.hpp"
#include "alloystef/errors.hpp"
#include "alloystef/fields.hpp"
#include "alloystef/model.hpp"
#include "alloystef/phase_diagram.hpp"
#include "alloystef/solver.hpp"
#include "alloystef/specfun.hpp"
#include "alloystef/verify.hpp"
#include "alloystef/version.hpp"
