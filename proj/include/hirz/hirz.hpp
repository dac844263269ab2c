// Umbrella header.
#pragma once

#include "hirz/lattice.hpp"
#include "hirz/modular.hpp"
#include "hirz/oracle.hpp"
#include "hirz/curves.hpp"
#include "hirz/reduction.hpp"
#include "hirz/harness.hpp"
#include "hirz/io.hpp"
