#pragma once

#include "nk6/canonical.hpp"
#include "nk6/cayley.hpp"
#include "nk6/geometry.hpp"
#include "nk6/jet.hpp"
#include "nk6/models.hpp"
#include "nk6/simons.hpp"
#include "nk6/types.hpp"
#include "nk6/version.hpp"
