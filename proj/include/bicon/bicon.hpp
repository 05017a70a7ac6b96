#pragma once

#include "bicon/numerics.hpp"
#include "bicon/report.hpp"
#include "bicon/modulus.hpp"
#include "bicon/geometry.hpp"
#include "bicon/deformations.hpp"
#include "bicon/energy.hpp"
#include "bicon/continuity.hpp"
#include "bicon/parse.hpp"
