#pragma once

#include "udgo/bench.hpp"
#include "udgo/cell_index.hpp"
#include "udgo/channel.hpp"
#include "udgo/geometry.hpp"
#include "udgo/json_io.hpp"
#include "udgo/oracle.hpp"
#include "udgo/percolation.hpp"
#include "udgo/rng.hpp"
#include "udgo/schedule.hpp"
#include "udgo/verify.hpp"
