#pragma once

#include "angular.hpp"
#include "bargmann.hpp"
#include "cortex.hpp"
#include "grid2d.hpp"
#include "heisenberg.hpp"
#include "io.hpp"
#include "se2.hpp"
