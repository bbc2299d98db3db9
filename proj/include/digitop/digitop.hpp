#pragma once

#include "digitop/functions.hpp"
#include "digitop/io.hpp"
#include "digitop/lattice.hpp"
#include "digitop/morphology.hpp"
#include "digitop/retraction.hpp"
#include "digitop/subdivision.hpp"
