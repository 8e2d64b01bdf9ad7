#pragma once

// Everything in one include.

#include "kdg/bits.hpp"
#include "kdg/graph.hpp"
#include "kdg/planarity.hpp"
#include "kdg/subdivision.hpp"
#include "kdg/graph_props.hpp"
#include "kdg/digraph.hpp"
#include "kdg/directed_subdivision.hpp"
#include "kdg/lemmas.hpp"
#include "kdg/obstructions.hpp"
#include "kdg/canonical.hpp"
#include "kdg/families.hpp"
#include "kdg/orientation.hpp"
#include "kdg/enumeration.hpp"
#include "kdg/io.hpp"
