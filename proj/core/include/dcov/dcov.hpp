#ifndef DCOV_DCOV_HPP
#define DCOV_DCOV_HPP

#include "dcov/distance.hpp"
#include "dcov/error.hpp"
#include "dcov/estimators.hpp"
#include "dcov/inference.hpp"
#include "dcov/matrix.hpp"
#include "dcov/matrix_tools.hpp"
#include "dcov/parallel.hpp"
#include "dcov/random.hpp"
#include "dcov/sample.hpp"
#include "dcov/simulation.hpp"
#include "dcov/summation.hpp"

#endif  // DCOV_DCOV_HPP
