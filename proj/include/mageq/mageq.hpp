#pragma once

#include "bench.hpp"
#include "equivalence.hpp"
#include "errors.hpp"
#include "graph.hpp"
#include "maximality.hpp"
#include "oracles.hpp"
#include "projection.hpp"
#include "separation.hpp"
#include "text_format.hpp"
