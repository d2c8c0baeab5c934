#pragma once

#include "olr/bignum.hpp"
#include "olr/builders.hpp"
#include "olr/canonical.hpp"
#include "olr/embedding.hpp"
#include "olr/engine.hpp"
#include "olr/error.hpp"
#include "olr/graph.hpp"
#include "olr/kst.hpp"
#include "olr/painters.hpp"
#include "olr/ramsey_bounds.hpp"
#include "olr/registry.hpp"
#include "olr/session.hpp"
#include "olr/solver.hpp"
#include "olr/strategy.hpp"
#include "olr/target.hpp"
