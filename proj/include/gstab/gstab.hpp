#pragma once

// Umbrella header.

#include "gstab/errors.hpp"
#include "gstab/extended_real.hpp"
#include "gstab/state_vector.hpp"
#include "gstab/gfunction.hpp"
#include "gstab/region.hpp"
#include "gstab/sampling.hpp"
#include "gstab/system.hpp"
#include "gstab/checker.hpp"
#include "gstab/validate.hpp"
#include "gstab/expression.hpp"
#include "gstab/report_io.hpp"
#include "gstab/config.hpp"
