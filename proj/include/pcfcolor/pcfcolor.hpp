#pragma once

#include "cnf.hpp"
#include "coloring.hpp"
#include "graph.hpp"
#include "harness.hpp"
#include "io.hpp"
#include "reductions.hpp"
#include "solver.hpp"
