#pragma once

#include "ncsc/catalyst.hpp"
#include "ncsc/instances.hpp"
#include "ncsc/metrics.hpp"
#include "ncsc/oracle_log.hpp"
#include "ncsc/problem.hpp"
#include "ncsc/solvers.hpp"
#include "ncsc/trace.hpp"
#include "ncsc/types.hpp"
