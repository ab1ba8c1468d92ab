#pragma once

#include "submax/algorithms.hpp"
#include "submax/bench.hpp"
#include "submax/core.hpp"
#include "submax/graphs.hpp"
#include "submax/matrix.hpp"
#include "submax/objectives.hpp"
#include "submax/sampling.hpp"
#include "submax/theory.hpp"
