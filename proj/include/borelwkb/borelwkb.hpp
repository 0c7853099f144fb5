#pragma once

#include "borelwkb/combinatorics.hpp"
#include "borelwkb/errors.hpp"
#include "borelwkb/frak_a.hpp"
#include "borelwkb/geometry.hpp"
#include "borelwkb/json_io.hpp"
#include "borelwkb/laurent.hpp"
#include "borelwkb/oracle.hpp"
#include "borelwkb/pade.hpp"
#include "borelwkb/potential.hpp"
#include "borelwkb/power_series.hpp"
#include "borelwkb/quadrature.hpp"
#include "borelwkb/summation.hpp"
#include "borelwkb/wkb.hpp"
