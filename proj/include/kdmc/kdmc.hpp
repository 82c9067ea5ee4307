// Copyright 2026 the kdmc authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "kdmc/accumulators.hpp"
#include "kdmc/allocation.hpp"
#include "kdmc/anderson_darling.hpp"
#include "kdmc/background.hpp"
#include "kdmc/config.hpp"
#include "kdmc/correlate.hpp"
#include "kdmc/experiment.hpp"
#include "kdmc/kd.hpp"
#include "kdmc/levels.hpp"
#include "kdmc/mlmc.hpp"
#include "kdmc/parallel.hpp"
#include "kdmc/rng.hpp"
#include "kdmc/sampling.hpp"
