// Umbrella header.

#pragma once

#include "intdet/interval.hpp"
#include "intdet/real_matrix.hpp"
#include "intdet/interval_matrix.hpp"
#include "intdet/linalg.hpp"
#include "intdet/enclosures.hpp"
#include "intdet/precondition.hpp"
#include "intdet/special.hpp"
#include "intdet/hull.hpp"
#include "intdet/random.hpp"
#include "intdet/matrix_io.hpp"
#include "intdet/bench.hpp"
