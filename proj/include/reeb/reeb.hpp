#pragma once

#include "reeb/error.hpp"
#include "reeb/graph.hpp"
#include "reeb/handle_calc.hpp"
#include "reeb/io.hpp"
#include "reeb/isomorphism.hpp"
#include "reeb/label.hpp"
#include "reeb/morse_plan.hpp"
#include "reeb/numeric.hpp"
#include "reeb/pl_surface.hpp"
#include "reeb/reeb_graph.hpp"
#include "reeb/verify.hpp"
#include "reeb/zalgebra.hpp"
