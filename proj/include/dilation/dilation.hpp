#pragma once

#include "dilation/error.hpp"
#include "dilation/numeric.hpp"
#include "dilation/geometry.hpp"
#include "dilation/mapping_class.hpp"
#include "dilation/interval_maps.hpp"
#include "dilation/rauzy.hpp"
#include "dilation/surface.hpp"
#include "dilation/teichmuller.hpp"
#include "dilation/io.hpp"
