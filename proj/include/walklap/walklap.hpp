#pragma once

#include "walklap/coefficients.hpp"
#include "walklap/common.hpp"
#include "walklap/dense.hpp"
#include "walklap/diffusion.hpp"
#include "walklap/generators.hpp"
#include "walklap/graph.hpp"
#include "walklap/kernels.hpp"
#include "walklap/krylov.hpp"
#include "walklap/operators.hpp"
#include "walklap/return_probability.hpp"
#include "walklap/spectral.hpp"
#include "walklap/walks.hpp"
