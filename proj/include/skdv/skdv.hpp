#pragma once

// Umbrella header: exact Grassmann-graded calculus, super Hirota operators,
// Bell polynomials, equation verification, and soliton profile evaluation.

#include "skdv/bell.hpp"
#include "skdv/calculus.hpp"
#include "skdv/errors.hpp"
#include "skdv/fraction.hpp"
#include "skdv/grassmann.hpp"
#include "skdv/hirota.hpp"
#include "skdv/jet.hpp"
#include "skdv/multi_index.hpp"
#include "skdv/rational.hpp"
#include "skdv/report.hpp"
#include "skdv/representations.hpp"
#include "skdv/sampling.hpp"
#include "skdv/soliton.hpp"
#include "skdv/super_expr.hpp"
