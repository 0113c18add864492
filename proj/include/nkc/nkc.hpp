#pragma once

#include "nkc/rng.hpp"
#include "nkc/errors.hpp"
#include "nkc/landscape.hpp"
#include "nkc/agent.hpp"
#include "nkc/coalition.hpp"
#include "nkc/records.hpp"
#include "nkc/metrics.hpp"
#include "nkc/engine.hpp"
#include "nkc/config.hpp"
#include "nkc/sweep.hpp"
