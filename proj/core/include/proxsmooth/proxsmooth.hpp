#pragma once

#include "proxsmooth/bench.hpp"
#include "proxsmooth/dispersion.hpp"
#include "proxsmooth/mathkit.hpp"
#include "proxsmooth/mimo.hpp"
#include "proxsmooth/problem.hpp"
#include "proxsmooth/prox.hpp"
#include "proxsmooth/rng.hpp"
#include "proxsmooth/solver.hpp"
#include "proxsmooth/types.hpp"
