#pragma once

#include "qknap/bits.hpp"
#include "qknap/evaluation.hpp"
#include "qknap/harness.hpp"
#include "qknap/io.hpp"
#include "qknap/ising.hpp"
#include "qknap/knapsack.hpp"
#include "qknap/optimizer.hpp"
#include "qknap/oracle.hpp"
#include "qknap/qubo.hpp"
#include "qknap/rng.hpp"
#include "qknap/schedule.hpp"
#include "qknap/statevector.hpp"
