#pragma once

#include "bmean/analysis.hpp"
#include "bmean/decide.hpp"
#include "bmean/dual.hpp"
#include "bmean/expr.hpp"
#include "bmean/families.hpp"
#include "bmean/generator.hpp"
#include "bmean/linalg.hpp"
#include "bmean/mean.hpp"
#include "bmean/quadrature.hpp"
#include "bmean/reduction.hpp"
#include "bmean/sampled_function.hpp"
