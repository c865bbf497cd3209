#pragma once

// Umbrella header for the whole library.

#include "gce/matrix.hpp"
#include "gce/graphcore.hpp"
#include "gce/primeq.hpp"
#include "gce/explosion.hpp"
#include "gce/intmatrix.hpp"
#include "gce/sse.hpp"
#include "gce/ktheory.hpp"
#include "gce/search.hpp"
