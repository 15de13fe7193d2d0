#pragma once

#include "linkage/bits.hpp"
#include "linkage/core.hpp"
#include "linkage/problem.hpp"
#include "linkage/landscape.hpp"
#include "linkage/epistasis.hpp"
#include "linkage/graph.hpp"
#include "linkage/decomposition.hpp"
#include "linkage/oracles.hpp"
#include "linkage/ga.hpp"
#include "linkage/experiments.hpp"
#include "linkage/io.hpp"
