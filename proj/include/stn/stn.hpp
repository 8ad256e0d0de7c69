#pragma once

// Umbrella header: the full structure/texture/noise decomposition toolkit.

#include "stn/driver.hpp"
#include "stn/errors.hpp"
#include "stn/grid_ops.hpp"
#include "stn/image.hpp"
#include "stn/models.hpp"
#include "stn/partition.hpp"
#include "stn/pgm.hpp"
#include "stn/projector.hpp"
#include "stn/synth.hpp"
#include "stn/wavelet.hpp"
