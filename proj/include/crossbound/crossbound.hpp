#pragma once

// Everything at once.

#include "crossbound/bounds.hpp"
#include "crossbound/cliquesum.hpp"
#include "crossbound/cliquesum_draw.hpp"
#include "crossbound/cliquesum_random.hpp"
#include "crossbound/convex_drawers.hpp"
#include "crossbound/decomposition.hpp"
#include "crossbound/drawers.hpp"
#include "crossbound/generators.hpp"
#include "crossbound/geometry.hpp"
#include "crossbound/graph.hpp"
#include "crossbound/io.hpp"
#include "crossbound/oracle.hpp"
#include "crossbound/planar.hpp"
#include "crossbound/rational.hpp"
#include "crossbound/rng.hpp"
