#pragma once

#include "besovbm/error.hpp"
#include "besovbm/rng.hpp"
#include "besovbm/parallel.hpp"
#include "besovbm/stats.hpp"
#include "besovbm/orlicz.hpp"
#include "besovbm/spaces.hpp"
#include "besovbm/simulate.hpp"
#include "besovbm/besov.hpp"
#include "besovbm/gaussmax.hpp"
#include "besovbm/harness/config.hpp"
#include "besovbm/harness/report.hpp"
#include "besovbm/harness/experiments.hpp"
