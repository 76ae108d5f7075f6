#pragma once

#include "primal/agent.hpp"
#include "primal/classifier.hpp"
#include "primal/config.hpp"
#include "primal/costs.hpp"
#include "primal/csv.hpp"
#include "primal/experiments.hpp"
#include "primal/fields.hpp"
#include "primal/ground_truth.hpp"
#include "primal/message.hpp"
#include "primal/network.hpp"
#include "primal/profiles.hpp"
#include "primal/rng.hpp"
#include "primal/simulation.hpp"
#include "primal/stats.hpp"
#include "primal/supervisor.hpp"
#include "primal/sweep.hpp"
#include "primal/transmitter.hpp"
