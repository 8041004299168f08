#pragma once

#include "siss/constants.hpp"
#include "siss/errors.hpp"
#include "siss/extremal.hpp"
#include "siss/generator_spec.hpp"
#include "siss/generators.hpp"
#include "siss/periodization.hpp"
#include "siss/quadrature.hpp"
#include "siss/series.hpp"
#include "siss/siss_functions.hpp"
