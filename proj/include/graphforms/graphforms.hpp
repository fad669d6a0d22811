#pragma once

#include "graphforms/braiding.hpp"
#include "graphforms/calculus.hpp"
#include "graphforms/cocycles.hpp"
#include "graphforms/complex_structure.hpp"
#include "graphforms/error.hpp"
#include "graphforms/first_order.hpp"
#include "graphforms/graph.hpp"
#include "graphforms/holomorphic.hpp"
#include "graphforms/matrix.hpp"
#include "graphforms/polygon.hpp"
#include "graphforms/psd.hpp"
#include "graphforms/scalar.hpp"
