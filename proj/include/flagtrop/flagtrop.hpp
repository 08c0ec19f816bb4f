#pragma once

#include "flagtrop/subset.hpp"
#include "flagtrop/linalg.hpp"
#include "flagtrop/polynomial.hpp"
#include "flagtrop/matroid.hpp"
#include "flagtrop/flag_matroid.hpp"
#include "flagtrop/hull.hpp"
#include "flagtrop/subdivision.hpp"
#include "flagtrop/tropical_flag.hpp"
#include "flagtrop/strata.hpp"
#include "flagtrop/json_io.hpp"
