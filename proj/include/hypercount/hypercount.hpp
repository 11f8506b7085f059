#ifndef HYPERCOUNT_HYPERCOUNT_HPP
#define HYPERCOUNT_HYPERCOUNT_HPP

#include "hypercount/absorb.hpp"
#include "hypercount/bisection.hpp"
#include "hypercount/bounds.hpp"
#include "hypercount/cliques.hpp"
#include "hypercount/combinatorics.hpp"
#include "hypercount/error.hpp"
#include "hypercount/factors.hpp"
#include "hypercount/generators.hpp"
#include "hypercount/hypergeometric.hpp"
#include "hypercount/hypergraph.hpp"
#include "hypercount/interval.hpp"
#include "hypercount/io.hpp"
#include "hypercount/parallel.hpp"
#include "hypercount/partition.hpp"
#include "hypercount/path_search.hpp"
#include "hypercount/paths.hpp"
#include "hypercount/pipeline.hpp"
#include "hypercount/rational.hpp"
#include "hypercount/report.hpp"
#include "hypercount/rng.hpp"
#include "hypercount/search.hpp"
#include "hypercount/stitch.hpp"
#include "hypercount/thresholds.hpp"
#include "hypercount/vertex_set.hpp"

#endif // HYPERCOUNT_HYPERCOUNT_HPP
