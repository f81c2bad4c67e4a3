#pragma once

#include "symdyn/baseline.hpp"
#include "symdyn/emit.hpp"
#include "symdyn/error.hpp"
#include "symdyn/ingest.hpp"
#include "symdyn/multifractal.hpp"
#include "symdyn/probdist.hpp"
#include "symdyn/regression.hpp"
#include "symdyn/renyi.hpp"
#include "symdyn/stationarity.hpp"
#include "symdyn/symbolize.hpp"
