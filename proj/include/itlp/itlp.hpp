#pragma once

// Incomplete intermodal terminal location: data model, instance generator,
// MIP formulations, LP engine, exact and heuristic solvers, file formats.

#include "itlp/bench.hpp"
#include "itlp/bnb.hpp"
#include "itlp/brute_force.hpp"
#include "itlp/check.hpp"
#include "itlp/evaluate.hpp"
#include "itlp/formulation.hpp"
#include "itlp/generator.hpp"
#include "itlp/heuristic.hpp"
#include "itlp/instance.hpp"
#include "itlp/io.hpp"
#include "itlp/lp.hpp"
#include "itlp/lp_audit.hpp"
#include "itlp/lp_export.hpp"
#include "itlp/lp_simplex.hpp"
#include "itlp/model.hpp"
#include "itlp/names.hpp"
#include "itlp/solution.hpp"
#include "itlp/variant.hpp"
