// Umbrella header pulling in the whole library.
#pragma once

#include "ksctx/enumeration.hpp"
#include "ksctx/errors.hpp"
#include "ksctx/fixtures.hpp"
#include "ksctx/ks.hpp"
#include "ksctx/metrics.hpp"
#include "ksctx/polytope.hpp"
#include "ksctx/rational.hpp"
#include "ksctx/scenario.hpp"
#include "ksctx/simplex.hpp"
#include "ksctx/simulate.hpp"
