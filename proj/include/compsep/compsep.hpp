#pragma once

#include "compsep/errors.hpp"
#include "compsep/io.hpp"
#include "compsep/normal.hpp"
#include "compsep/pairwise.hpp"
#include "compsep/pointwise.hpp"
#include "compsep/power.hpp"
#include "compsep/random.hpp"
#include "compsep/report.hpp"
#include "compsep/simulation.hpp"
#include "compsep/stat_tests.hpp"
#include "compsep/types.hpp"
#include "compsep/weights.hpp"
