#pragma once

#include "pulearn/commands.hpp"
#include "pulearn/dataset.hpp"
#include "pulearn/estimators.hpp"
#include "pulearn/glm.hpp"
#include "pulearn/harness.hpp"
#include "pulearn/json_io.hpp"
#include "pulearn/metrics.hpp"
#include "pulearn/rng.hpp"
#include "pulearn/synth.hpp"
