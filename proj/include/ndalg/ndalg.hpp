#pragma once

#include "ndalg/actions.hpp"
#include "ndalg/algebra.hpp"
#include "ndalg/expr.hpp"
#include "ndalg/ideal.hpp"
#include "ndalg/interval.hpp"
#include "ndalg/ode.hpp"
#include "ndalg/projectable.hpp"
#include "ndalg/scenario.hpp"
#include "ndalg/serialization.hpp"
