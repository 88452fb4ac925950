#pragma once

#include "kneading/rational.hpp"
#include "kneading/piecewise_linear.hpp"
#include "kneading/pa_map.hpp"
#include "kneading/map_sequence.hpp"
#include "kneading/symbolic.hpp"
#include "kneading/combinatorics.hpp"
#include "kneading/conjugacy.hpp"
#include "kneading/config.hpp"
#include "kneading/report_io.hpp"
