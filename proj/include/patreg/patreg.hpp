#pragma once

#include "patreg/csv.hpp"
#include "patreg/date.hpp"
#include "patreg/indicator_types.hpp"
#include "patreg/indicators.hpp"
#include "patreg/ingest.hpp"
#include "patreg/model.hpp"
#include "patreg/oracle.hpp"
#include "patreg/render.hpp"
#include "patreg/rng.hpp"
#include "patreg/scenarios.hpp"
#include "patreg/store.hpp"
#include "patreg/synth.hpp"
