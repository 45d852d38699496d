#pragma once

#include "discrete_limits.hpp"
#include "distributions.hpp"
#include "entropy.hpp"
#include "entropy_spec.hpp"
#include "errors.hpp"
#include "gaussian_vector.hpp"
#include "oracle.hpp"
#include "quadrature.hpp"
#include "selftest.hpp"
#include "special_functions.hpp"
