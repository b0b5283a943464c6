#pragma once

#include "treksep/algebra.hpp"
#include "treksep/error.hpp"
#include "treksep/flow.hpp"
#include "treksep/graph.hpp"
#include "treksep/graph_io.hpp"
#include "treksep/rational.hpp"
#include "treksep/separation.hpp"
#include "treksep/treks.hpp"
#include "treksep/verify.hpp"
