#pragma once

// Everything except the command-line front end (bmc/cli.hpp).
#include "bmc/error.hpp"
#include "bmc/rational.hpp"
#include "bmc/graph.hpp"
#include "bmc/exact.hpp"
#include "bmc/vc.hpp"
#include "bmc/ec.hpp"
#include "bmc/gen.hpp"
#include "bmc/io.hpp"
