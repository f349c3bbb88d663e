#pragma once

#include "darboux_lab/darboux.hpp"
#include "darboux_lab/eigen.hpp"
#include "darboux_lab/ermakov.hpp"
#include "darboux_lab/error.hpp"
#include "darboux_lab/grid.hpp"
#include "darboux_lab/ode.hpp"
#include "darboux_lab/oracle.hpp"
#include "darboux_lab/parallel.hpp"
#include "darboux_lab/potentials.hpp"
#include "darboux_lab/quadrature.hpp"
#include "darboux_lab/seeds.hpp"
#include "darboux_lab/specfun.hpp"
