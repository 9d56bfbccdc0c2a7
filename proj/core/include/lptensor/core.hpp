#pragma once

#include "lptensor/core/error.hpp"
#include "lptensor/core/exponent.hpp"
#include "lptensor/core/interchange.hpp"
#include "lptensor/core/multi_index.hpp"
#include "lptensor/core/random.hpp"
#include "lptensor/core/schedule.hpp"
#include "lptensor/core/selection.hpp"
#include "lptensor/core/signature.hpp"
#include "lptensor/core/tensor.hpp"
