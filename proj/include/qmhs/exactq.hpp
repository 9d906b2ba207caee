#pragma once

#include "qmhs/exactq/cyclotomic.hpp"
#include "qmhs/exactq/polynomial.hpp"
#include "qmhs/exactq/q_combinatorics.hpp"
#include "qmhs/exactq/rational.hpp"
#include "qmhs/exactq/rational_function.hpp"
