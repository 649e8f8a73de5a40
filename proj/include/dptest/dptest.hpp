#pragma once

#include "dptest/connectivity.hpp"
#include "dptest/exact.hpp"
#include "dptest/generators.hpp"
#include "dptest/graph.hpp"
#include "dptest/harness.hpp"
#include "dptest/oracle.hpp"
#include "dptest/random.hpp"
#include "dptest/star_freeness.hpp"
#include "dptest/subgraph_freeness.hpp"
