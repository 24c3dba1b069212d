#pragma once

// Convenience header pulling in the whole library.

#include "lamapf/cnf.hpp"
#include "lamapf/errors.hpp"
#include "lamapf/geometry.hpp"
#include "lamapf/instance.hpp"
#include "lamapf/io.hpp"
#include "lamapf/reduction.hpp"
#include "lamapf/render.hpp"
#include "lamapf/solver.hpp"
#include "lamapf/witness.hpp"
