#pragma once

// Everything: graphs, calculus, splice diagrams, series, monomials,
// invariants and the graph-file / JSON layer.

#include "splicetype/calculus.hpp"
#include "splicetype/error.hpp"
#include "splicetype/graph.hpp"
#include "splicetype/invariants.hpp"
#include "splicetype/io.hpp"
#include "splicetype/monomial.hpp"
#include "splicetype/numeric.hpp"
#include "splicetype/series.hpp"
#include "splicetype/splice_diagram.hpp"
