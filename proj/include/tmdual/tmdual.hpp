#pragma once

#include "counterexample.hpp"
#include "duality.hpp"
#include "io.hpp"
#include "random.hpp"

/// Umbrella header: exact Anderson t-module duality over F_q(T).
