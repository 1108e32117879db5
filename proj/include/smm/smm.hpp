#pragma once

#include "smm/bench.hpp"
#include "smm/domains.hpp"
#include "smm/engine.hpp"
#include "smm/graph.hpp"
#include "smm/oracle.hpp"
#include "smm/ordering.hpp"
#include "smm/rng.hpp"
#include "smm/symmetry.hpp"
#include "smm/synth.hpp"
#include "smm/text_format.hpp"
