#pragma once

#include "polyfactor/combinat.hpp"
#include "polyfactor/deciders.hpp"
#include "polyfactor/errors.hpp"
#include "polyfactor/factorization.hpp"
#include "polyfactor/integers.hpp"
#include "polyfactor/json_io.hpp"
#include "polyfactor/poly.hpp"
#include "polyfactor/reductions.hpp"
#include "polyfactor/version.hpp"
