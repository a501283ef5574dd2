#pragma once

#include "blocks.hpp"
#include "constants.hpp"
#include "errors.hpp"
#include "finite_vector.hpp"
#include "report_io.hpp"
#include "space.hpp"
#include "verify.hpp"
#include "weights.hpp"
