#pragma once

#include "ctns/config.hpp"
#include "ctns/field.hpp"
#include "ctns/grid.hpp"
#include "ctns/heat.hpp"
#include "ctns/initial.hpp"
#include "ctns/integrator.hpp"
#include "ctns/littlewood_paley.hpp"
#include "ctns/model.hpp"
#include "ctns/monitor.hpp"
#include "ctns/operators.hpp"
#include "ctns/random.hpp"
#include "ctns/reporting.hpp"
#include "ctns/scaling.hpp"
#include "ctns/simulation.hpp"
#include "ctns/snapshot.hpp"
#include "ctns/verify.hpp"
