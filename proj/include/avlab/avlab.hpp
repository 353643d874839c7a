#pragma once

#include "avlab/common.hpp"
#include "avlab/engine.hpp"
#include "avlab/errors.hpp"
#include "avlab/hypergraph.hpp"
#include "avlab/parallel.hpp"
#include "avlab/permutability.hpp"
#include "avlab/permutation.hpp"
#include "avlab/rng.hpp"
#include "avlab/set_partition.hpp"
#include "avlab/tuples.hpp"
