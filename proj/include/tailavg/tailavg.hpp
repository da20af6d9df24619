#ifndef TAILAVG_TAILAVG_HPP
#define TAILAVG_TAILAVG_HPP

#include "tailavg/averaging.hpp"
#include "tailavg/distributions.hpp"
#include "tailavg/errors.hpp"
#include "tailavg/gpd.hpp"
#include "tailavg/ingest.hpp"
#include "tailavg/pareto.hpp"
#include "tailavg/plot.hpp"
#include "tailavg/regression.hpp"
#include "tailavg/report.hpp"
#include "tailavg/rng.hpp"
#include "tailavg/sample.hpp"
#include "tailavg/study.hpp"

#endif  // TAILAVG_TAILAVG_HPP
