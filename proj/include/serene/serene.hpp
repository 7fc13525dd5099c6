#pragma once

#include "serene/complex.hpp"
#include "serene/constructions.hpp"
#include "serene/fixtures.hpp"
#include "serene/freecomplete.hpp"
#include "serene/geometry.hpp"
#include "serene/json_io.hpp"
#include "serene/latincomplete.hpp"
#include "serene/ncgraph.hpp"
#include "serene/perms.hpp"
#include "serene/quasigroup.hpp"
#include "serene/topology.hpp"
