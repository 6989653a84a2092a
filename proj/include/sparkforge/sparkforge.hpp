#pragma once

#include "sparkforge/constructions.hpp"
#include "sparkforge/cyclotomic.hpp"
#include "sparkforge/dft_analysis.hpp"
#include "sparkforge/error.hpp"
#include "sparkforge/exact_matrix.hpp"
#include "sparkforge/frame.hpp"
#include "sparkforge/index_set.hpp"
#include "sparkforge/io.hpp"
#include "sparkforge/matroid.hpp"
#include "sparkforge/number_theory.hpp"
#include "sparkforge/spark.hpp"
#include "sparkforge/subsets.hpp"
