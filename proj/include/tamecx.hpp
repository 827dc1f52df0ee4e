#pragma once

#include "tamecx/param.hpp"
#include "tamecx/exactlin.hpp"
#include "tamecx/chaincx.hpp"
#include "tamecx/tamecat.hpp"
#include "tamecx/decomp.hpp"
#include "tamecx/morinv.hpp"
#include "tamecx/zigzag.hpp"
#include "tamecx/formats.hpp"
